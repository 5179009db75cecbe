#include "dirdes/trades.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <stdexcept>

#include "dirdes/matching.hpp"
#include "dirdes/vertex_cover.hpp"

namespace dirdes::trades {

using core::OrderedBlock;

namespace {

// Orders points by how many of the given directed pairs point at them; the
// result is a valid tuple iff the pair set is a transitive tournament.
std::optional<OrderedBlock> order_tournament(const std::vector<int>& pts,
                                             const std::set<std::pair<int, int>>& pairs) {
    std::map<int, int> indeg;
    for (int p : pts) indeg[p] = 0;
    for (auto& [x, y] : pairs) indeg[y]++;
    OrderedBlock out(pts.size(), -1);
    for (auto& [p, deg] : indeg) {
        if (deg < 0 || deg >= static_cast<int>(pts.size()) || out[deg] != -1) return std::nullopt;
        out[deg] = p;
    }
    std::map<int, int> pos;
    for (size_t i = 0; i < out.size(); i++) pos[out[i]] = static_cast<int>(i);
    for (auto& [x, y] : pairs)
        if (pos[x] > pos[y]) return std::nullopt;
    return out;
}

}  // namespace

std::optional<VolumeTwoTrade> find_trade(const OrderedBlock& b1, const OrderedBlock& b2) {
    if (b1 == b2) throw std::invalid_argument("find_trade: identical blocks");
    std::set<int> A(b1.begin(), b1.end()), B(b2.begin(), b2.end());
    std::vector<int> shared;
    std::set_intersection(A.begin(), A.end(), B.begin(), B.end(), std::back_inserter(shared));
    if (shared.size() < 2) return std::nullopt;

    auto orient = [](const OrderedBlock& b, int x, int y) {
        auto px = std::find(b.begin(), b.end(), x) - b.begin();
        auto py = std::find(b.begin(), b.end(), y) - b.begin();
        return px < py ? std::pair{x, y} : std::pair{y, x};
    };

    // Unordered pairs inside the shared set appear in both blocks; the
    // replacement blocks keep every other pair fixed and redistribute these.
    std::vector<std::pair<int, int>> xpairs;
    for (size_t i = 0; i < shared.size(); i++)
        for (size_t j = i + 1; j < shared.size(); j++) xpairs.emplace_back(shared[i], shared[j]);

    std::set<std::pair<int, int>> base1, base2;
    std::set<int> X(shared.begin(), shared.end());
    for (auto [x, y] : core::ordered_pairs_of(b1))
        if (!(X.count(x) && X.count(y))) base1.insert({x, y});
    for (auto [x, y] : core::ordered_pairs_of(b2))
        if (!(X.count(x) && X.count(y))) base2.insert({x, y});

    std::vector<int> ptsA(A.begin(), A.end()), ptsB(B.begin(), B.end());
    size_t m = xpairs.size();
    for (uint64_t mask = 0; mask < (uint64_t{1} << m); mask++) {
        auto p1 = base1;
        auto p2 = base2;
        for (size_t k = 0; k < m; k++) {
            auto [x, y] = xpairs[k];
            auto o1 = orient(b1, x, y), o2 = orient(b2, x, y);
            p1.insert((mask >> k) & 1 ? o2 : o1);
            p2.insert((mask >> k) & 1 ? o1 : o2);
        }
        auto c1 = order_tournament(ptsA, p1);
        if (!c1) continue;
        auto c2 = order_tournament(ptsB, p2);
        if (!c2) continue;
        if (*c1 == b1 || *c1 == b2 || *c2 == b1 || *c2 == b2) continue;
        return VolumeTwoTrade{{b1, b2}, {*c1, *c2}};
    }
    return std::nullopt;
}

std::vector<std::vector<int>> TradeGraph::adjacency() const {
    std::vector<std::vector<int>> adj(n);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    return adj;
}

TradeGraph trade_graph(const core::LabeledDesign& d) {
    TradeGraph g;
    g.n = static_cast<int>(d.blocks.size());
    std::map<std::pair<int, int>, std::vector<int>> byPair;
    for (size_t i = 0; i < d.blocks.size(); i++)
        for (auto [x, y] : core::ordered_pairs_of(d.blocks[i]))
            byPair[{std::min(x, y), std::max(x, y)}].push_back(static_cast<int>(i));
    std::set<std::pair<int, int>> candidates;
    for (const auto& [pr, bs] : byPair)
        for (size_t i = 0; i < bs.size(); i++)
            for (size_t j = i + 1; j < bs.size(); j++)
                candidates.insert({std::min(bs[i], bs[j]), std::max(bs[i], bs[j])});
    for (auto [i, j] : candidates)
        if (auto t = find_trade(d.blocks[i], d.blocks[j])) {
            g.edges.emplace_back(i, j);
            g.witnesses.push_back(std::move(*t));
        }
    return g;
}

long long TradeCertificate::structural() const {
    long long s = matching.size();
    for (const auto& c : cycles) s += (c.size() + 1) / 2;
    return s;
}

std::string TradeCertificate::text(const core::LabeledDesign& d) const {
    auto tup = [&](const OrderedBlock& b) {
        std::string out = "(";
        for (size_t i = 0; i < b.size(); i++)
            out += (i ? ", " : "") + d.space.label(b[i]).str();
        return out + ")";
    };
    std::string out = "BOUND " + std::to_string(bound) + " OF " + std::to_string(designBlocks) +
                      " MODE " + (mode == BoundMode::Matching ? "matching" : "exactVC") + "\n";
    for (int e : matching) {
        auto [i, j] = graph.edges[e];
        out += "EDGE " + std::to_string(i) + " " + std::to_string(j) + " : " +
               tup(graph.witnesses[e].t2[0]) + " " + tup(graph.witnesses[e].t2[1]) + "\n";
    }
    for (const auto& c : cycles) {
        out += "CYCLE";
        for (int v : c) out += " " + std::to_string(v);
        out += "\n";
    }
    return out;
}

namespace {

// Component as a simple cycle: every vertex degree 2, as many edges as
// vertices; returns the vertices in cycle order.
std::optional<std::vector<int>> component_cycle(const std::vector<int>& comp,
                                                const std::vector<std::vector<int>>& adj) {
    for (int v : comp)
        if (adj[v].size() != 2) return std::nullopt;
    std::vector<int> order;
    std::set<int> seen;
    int v = comp[0], prev = -1;
    while (!seen.count(v)) {
        order.push_back(v);
        seen.insert(v);
        int next = adj[v][0] == prev ? adj[v][1] : adj[v][0];
        prev = v;
        v = next;
    }
    if (order.size() != comp.size() || v != comp[0]) return std::nullopt;
    return order;
}

std::vector<std::vector<int>> components(const TradeGraph& g, const std::vector<std::vector<int>>& adj) {
    std::vector<int> compOf(g.n, -1);
    std::vector<std::vector<int>> comps;
    for (int s = 0; s < g.n; s++) {
        if (compOf[s] != -1 || adj[s].empty()) continue;
        comps.emplace_back();
        std::vector<int> stack{s};
        compOf[s] = static_cast<int>(comps.size()) - 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comps.back().push_back(v);
            for (int u : adj[v])
                if (compOf[u] == -1) {
                    compOf[u] = compOf[v];
                    stack.push_back(u);
                }
        }
    }
    return comps;
}

}  // namespace

std::vector<std::vector<int>> find_cycles(const TradeGraph& g) {
    auto adj = g.adjacency();
    std::vector<std::vector<int>> out;
    for (const auto& comp : components(g, adj))
        if (auto cyc = component_cycle(comp, adj)) out.push_back(*cyc);
    return out;
}

TradeCertificate defining_bound(const core::LabeledDesign& d, BoundMode mode,
                                const BoundBudget& budget) {
    auto deadline = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(budget.seconds));
    TradeCertificate cert;
    cert.graph = trade_graph(d);
    cert.designBlocks = static_cast<long long>(d.blocks.size());
    cert.mode = mode;
    cert.exact = mode == BoundMode::ExactVC;

    auto adj = cert.graph.adjacency();
    std::map<std::pair<int, int>, int> edgeIndex;
    for (size_t e = 0; e < cert.graph.edges.size(); e++) edgeIndex[cert.graph.edges[e]] = static_cast<int>(e);
    auto mate = matching::max_matching(cert.graph.n, cert.graph.edges);

    for (const auto& comp : components(cert.graph, adj)) {
        std::vector<int> compMatch;
        for (int v : comp)
            if (mate[v] > v) compMatch.push_back(edgeIndex.at({v, mate[v]}));
        auto cyc = component_cycle(comp, adj);
        bool oddCycle = cyc && cyc->size() % 2 == 1;
        long long structuralHere = oddCycle ? (cyc->size() + 1) / 2 : compMatch.size();

        long long contribution = structuralHere;
        bool haveExact = false;
        if (mode == BoundMode::ExactVC) {
            if (oddCycle) {
                haveExact = true;  // an odd cycle's minimum cover is exactly ceil(s/2)
            } else if (static_cast<int>(comp.size()) <= budget.vcCap &&
                       std::chrono::steady_clock::now() < deadline) {
                std::map<int, int> local;
                for (size_t i = 0; i < comp.size(); i++) local[comp[i]] = static_cast<int>(i);
                std::vector<std::vector<int>> sub(comp.size());
                for (int v : comp)
                    for (int u : adj[v]) sub[local[v]].push_back(local[u]);
                if (auto k = vc::min_vertex_cover(sub, budget.nodes)) {
                    contribution = std::max<long long>(*k, structuralHere);
                    haveExact = true;
                }
            }
            if (!haveExact) cert.exact = false;
        }
        cert.bound += contribution;
        if (oddCycle)
            cert.cycles.push_back(*cyc);
        else
            cert.matching.insert(cert.matching.end(), compMatch.begin(), compMatch.end());
    }
    return cert;
}

bool hits_all_trades(const TradeGraph& g, const std::vector<int>& subset) {
    std::vector<char> in(g.n, 0);
    for (int v : subset) {
        if (v < 0 || v >= g.n) throw std::out_of_range("hits_all_trades: block index " + std::to_string(v));
        in[v] = 1;
    }
    for (auto [a, b] : g.edges)
        if (!in[a] && !in[b]) return false;
    return true;
}

bool hits_all_trades(const core::LabeledDesign& d, const std::vector<int>& subset) {
    return hits_all_trades(trade_graph(d), subset);
}

namespace {

struct CompletionSearch {
    int v;
    std::vector<std::vector<int32_t>> covered;
    long long nodes;
    std::chrono::steady_clock::time_point deadline;
    bool exhausted = false;
    int found = 0;

    bool block_free(const OrderedBlock& b) {
        for (auto [x, y] : core::ordered_pairs_of(b))
            if (covered[x][y]) return false;
        return true;
    }

    void apply(const OrderedBlock& b, int delta) {
        for (auto [x, y] : core::ordered_pairs_of(b)) covered[x][y] += delta;
    }

    void dfs() {
        if (found >= 2 || exhausted) return;
        if (--nodes < 0 || std::chrono::steady_clock::now() > deadline) {
            exhausted = true;
            return;
        }
        int fx = -1, fy = -1;
        for (int x = 0; x < v && fx < 0; x++)
            for (int y = 0; y < v; y++)
                if (x != y && !covered[x][y]) {
                    fx = x;
                    fy = y;
                    break;
                }
        if (fx < 0) {
            found++;
            return;
        }
        std::vector<int> rest;
        for (int p = 0; p < v; p++)
            if (p != fx && p != fy) rest.push_back(p);
        int r = static_cast<int>(rest.size());
        for (int a = 0; a < r && !exhausted && found < 2; a++)
            for (int b = a + 1; b < r && !exhausted && found < 2; b++)
                for (int c = b + 1; c < r && !exhausted && found < 2; c++) {
                    std::vector<int> pts{fx, fy, rest[a], rest[b], rest[c]};
                    std::sort(pts.begin(), pts.end());
                    do {
                        auto ix = std::find(pts.begin(), pts.end(), fx);
                        auto iy = std::find(pts.begin(), pts.end(), fy);
                        if (ix > iy) continue;
                        if (!block_free(pts)) continue;
                        apply(pts, 1);
                        dfs();
                        apply(pts, -1);
                        if (exhausted || found >= 2) break;
                    } while (std::next_permutation(pts.begin(), pts.end()));
                }
    }
};

}  // namespace

CompletionCount completion_search(int v, const std::vector<OrderedBlock>& fixed,
                                  const BoundBudget& budget) {
    CompletionSearch s;
    s.v = v;
    s.covered.assign(v, std::vector<int32_t>(v, 0));
    s.nodes = budget.nodes;
    s.deadline = std::chrono::steady_clock::now() +
                 std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                     std::chrono::duration<double>(budget.seconds));
    for (const auto& b : fixed) {
        if (b.size() != 5) throw std::invalid_argument("completion_search: block size != 5");
        for (int p : b)
            if (p < 0 || p >= v) throw std::invalid_argument("completion_search: point out of range");
        if (std::set<int>(b.begin(), b.end()).size() != b.size())
            throw std::invalid_argument("completion_search: repeated point in a block");
        if (!s.block_free(b)) throw std::invalid_argument("completion_search: an ordered pair is covered twice");
        s.apply(b, 1);
    }
    s.dfs();
    if (s.exhausted && s.found < 2) return CompletionCount::Indeterminate;
    if (s.found == 0) return CompletionCount::None;
    return s.found == 1 ? CompletionCount::Unique : CompletionCount::Multiple;
}

CompletionCount completion_search(const core::LabeledDesign& d,
                                  const std::vector<int>& fixedBlockIdx,
                                  const BoundBudget& budget) {
    std::vector<OrderedBlock> fixed;
    for (int bi : fixedBlockIdx) fixed.push_back(d.blocks.at(bi));
    return completion_search(d.v(), fixed, budget);
}

}  // namespace dirdes::trades
