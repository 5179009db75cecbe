#pragma once

#include <optional>
#include <vector>

namespace dirdes::vc {

// Exact minimum vertex cover size via branch and bound with degree-0/1 and
// domination reductions; nullopt when the node budget runs out.
std::optional<int> min_vertex_cover(const std::vector<std::vector<int>>& adj,
                                    long long nodeBudget = 100000000);

}  // namespace dirdes::vc
