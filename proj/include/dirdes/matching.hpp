#pragma once

#include <utility>
#include <vector>

namespace dirdes::matching {

// General-graph maximum matching; returns the mate of each vertex, -1 when
// unmatched.
std::vector<int> max_matching(int n, const std::vector<std::pair<int, int>>& edges);

}  // namespace dirdes::matching
