#pragma once

#include <string>
#include <vector>

#include "dirdes/core.hpp"

namespace dirdes::verify {

struct Report {
    bool pass = true;
    std::vector<std::string> checks;
    std::vector<std::string> counts;
    std::vector<std::string> violations;
    long long violationsTotal = 0;
    static constexpr size_t kViolationCap = 1000;

    void check(const std::string& name, bool ok, const std::string& detail = "");
    void count(const std::string& name, long long n);
    void violation(const std::string& what);
    void merge(const Report& other);
    std::string text() const;
};

Report verify_dd(const core::LabeledDesign& d);
Report verify_dgdd(const core::LabeledDesign& d);
Report verify_super_simple(const core::LabeledDesign& d);
// Unordered coverage at the design's lambda, block sizes restricted to K
// (empty K = any size); group partition, when present, switches to
// cross-group-only coverage.
Report verify_unordered(const core::LabeledDesign& d, const std::vector<int>& K = {});
Report verify_resolution(const core::LabeledDesign& d);
// Kind dispatch; ordered kinds also get the super-simplicity check.
Report verify_design(const core::LabeledDesign& d);

}  // namespace dirdes::verify
