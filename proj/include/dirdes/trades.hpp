#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "dirdes/core.hpp"

namespace dirdes::trades {

// A pair of blocks that can be replaced by a different pair covering exactly
// the same ordered pairs on the same points.
struct VolumeTwoTrade {
    std::array<core::OrderedBlock, 2> t1, t2;
};

// The alternative pair for two blocks, if one exists; blocks sharing fewer
// than two points admit none.  Passing the same tuple twice is an error.
std::optional<VolumeTwoTrade> find_trade(const core::OrderedBlock& b1,
                                         const core::OrderedBlock& b2);

// Vertices are design blocks; an edge joins two blocks forming a volume-2
// trade.  Any collection of blocks meeting every trade must cover every edge.
struct TradeGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<VolumeTwoTrade> witnesses;
    std::vector<std::vector<int>> adjacency() const;
};

TradeGraph trade_graph(const core::LabeledDesign& d);

// Components that are plain cycles, each listed in traversal order.
std::vector<std::vector<int>> find_cycles(const TradeGraph& g);

enum class BoundMode : uint8_t { Matching, ExactVC };

struct BoundBudget {
    long long nodes = 100000000;
    double seconds = 120;
    int vcCap = 2000;
};

// Lower bound on the size of any sub-collection of blocks determining the
// design, with a hand-checkable structural certificate: vertex-disjoint trade
// edges each force one block, and an odd cycle of length s forces ceil(s/2).
struct TradeCertificate {
    TradeGraph graph;
    long long designBlocks = 0;
    BoundMode mode = BoundMode::Matching;
    bool exact = false;  // every component's cover minimum was computed exactly
    long long bound = 0;
    std::vector<int> matching;              // edge indices, pairwise disjoint
    std::vector<std::vector<int>> cycles;   // odd cycles, disjoint from the matching
    long long structural() const;
    std::string text(const core::LabeledDesign& d) const;
};

TradeCertificate defining_bound(const core::LabeledDesign& d, BoundMode mode = BoundMode::ExactVC,
                                const BoundBudget& budget = {});

bool hits_all_trades(const TradeGraph& g, const std::vector<int>& subset);
bool hits_all_trades(const core::LabeledDesign& d, const std::vector<int>& subset);

enum class CompletionCount : uint8_t { None, Unique, Multiple, Indeterminate };

// How many designs on v points contain every block of the given collection.
// The collection must not cover any ordered pair twice.
CompletionCount completion_search(int v, const std::vector<core::OrderedBlock>& fixed,
                                  const BoundBudget& budget = {});
CompletionCount completion_search(const core::LabeledDesign& d,
                                  const std::vector<int>& fixedBlockIdx,
                                  const BoundBudget& budget = {});

}  // namespace dirdes::trades
