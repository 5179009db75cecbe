#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "dirdes/compose.hpp"
#include "dirdes/core.hpp"
#include "dirdes/devel.hpp"

namespace dirdes::catalog {

struct Erratum {
    std::string entry, printed, stored, note;
};

struct Entry {
    std::string name;  // DD(61), DGDD(4^8 6^1), ...
    core::DesignKind kind = core::DesignKind::DD;
    int v = 0;
    core::GroupTypeSignature sig;                 // grouped entries
    std::optional<devel::ConstructionSpec> spec;  // entries developed from base blocks
    std::string recipe;                           // entries built by composition
    devel::Claims claims;
    std::string route;  // one-line provenance note
};

class Catalog {
public:
    // Built-in texts, or *.dd files from $DIRDES_CATALOG when set; either way
    // the composed entries are appended programmatically.
    static Catalog load();

    const std::vector<Entry>& entries() const { return entries_; }
    const std::vector<Erratum>& errata() const { return errata_; }
    // Accepts the display name or the underlying construction name.
    const Entry* find(const std::string& name) const;
    const Entry* find_dd(int v) const;
    const Entry* find_dgdd(const core::GroupTypeSignature& sig) const;
    // Closest display names, for not-found diagnostics.
    std::vector<std::string> nearest(const std::string& name, int count = 3) const;

    core::LabeledDesign build(const Entry& e) const;
    core::LabeledDesign build(const std::string& name) const;  // throws on miss

    // All developed entries plus any *.dd files from $DIRDES_INGREDIENTS,
    // verified on insertion.
    const compose::IngredientRegistry& registry() const;

private:
    std::vector<Entry> entries_;
    std::vector<Erratum> errata_;
    mutable std::mutex mu_;
    mutable std::map<std::string, std::shared_ptr<const core::LabeledDesign>> built_;
    mutable std::shared_ptr<compose::IngredientRegistry> registry_;
};

struct AuditRow {
    std::string name;
    bool pass = false;
    long long blocks = 0;
    long long claimedBlocks = 0;
    long long bound = 0;      // certified defining-set lower bound
    long long boundGoal = 0;  // claimed numerator
    bool errata = false;
    std::string detail;
};

// Builds, verifies, and bound-certifies every entry; failures become rows,
// never exceptions.  Rows come back sorted by entry name.
std::vector<AuditRow> audit_all(const Catalog& c, int threads = 0);
std::string audit_table(const std::vector<AuditRow>& rows);

struct PlanStep {
    std::string text;
    bool external = false;  // ingredient beyond this library (PBD/RBIBD/TD tables)
    bool inferred = false;  // membership read off an elided list
};

struct SpectrumPlan {
    int v = 0;
    bool admissible = false;
    bool excluded = false;    // v in {5, 15}
    bool unresolved = false;  // no route recorded
    bool executable = false;  // materializable here: catalog entry or recipe
    std::string reason;       // for inadmissible/excluded/unresolved
    std::string route;
    std::string recipe;  // composition recipe when the route is one
    std::vector<PlanStep> steps;
    std::string text() const;
};

SpectrumPlan spectrum_plan(const Catalog& c, int v);

}  // namespace dirdes::catalog
