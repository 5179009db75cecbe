#include "dirdes/vertex_cover.hpp"

#include <algorithm>
#include <set>

namespace dirdes::vc {

namespace {

struct Solver {
    std::vector<std::set<int>> g;
    long long budget;
    int best;
    bool exhausted = false;

    void remove_into_cover(int v, int& taken) {
        auto nb = g[v];
        for (int u : nb) g[u].erase(v);
        g[v].clear();
        taken++;
    }

    void remove_isolated(int v) {
        auto nb = g[v];
        for (int u : nb) g[u].erase(v);
        g[v].clear();
    }

    // Reduce: strip degree-0, take the neighbor of every degree-1 vertex, and
    // take v whenever v's closed neighborhood contains u's (v covers at least
    // as much as u would).
    void reduce(int& taken) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t v = 0; v < g.size(); v++) {
                if (g[v].size() == 1) {
                    remove_into_cover(*g[v].begin(), taken);
                    changed = true;
                }
            }
            for (size_t u = 0; u < g.size() && !changed; u++) {
                if (g[u].empty()) continue;
                for (int v : g[u]) {
                    bool dominated = true;
                    for (int w : g[u])
                        if (w != v && !g[v].count(w)) {
                            dominated = false;
                            break;
                        }
                    if (dominated) {
                        remove_into_cover(v, taken);
                        changed = true;
                        break;
                    }
                }
            }
        }
    }

    int matching_lb() const {
        std::vector<bool> used(g.size(), false);
        int m = 0;
        for (size_t v = 0; v < g.size(); v++) {
            if (used[v] || g[v].empty()) continue;
            for (int u : g[v])
                if (!used[u]) {
                    used[v] = used[u] = true;
                    m++;
                    break;
                }
        }
        return m;
    }

    void run(int taken) {
        if (exhausted) return;
        if (--budget < 0) {
            exhausted = true;
            return;
        }
        reduce(taken);
        if (taken >= best) return;
        int maxDeg = 0, maxV = -1;
        for (size_t v = 0; v < g.size(); v++)
            if (static_cast<int>(g[v].size()) > maxDeg) {
                maxDeg = static_cast<int>(g[v].size());
                maxV = static_cast<int>(v);
            }
        if (maxV == -1) {
            best = std::min(best, taken);
            return;
        }
        if (taken + matching_lb() >= best) return;

        auto saved = g;
        remove_into_cover(maxV, taken);
        run(taken);
        g = saved;
        taken--;

        auto nb = g[maxV];
        remove_isolated(maxV);
        for (int u : nb) remove_into_cover(u, taken);
        run(taken);
        g = saved;
    }
};

}  // namespace

std::optional<int> min_vertex_cover(const std::vector<std::vector<int>>& adj, long long nodeBudget) {
    Solver s;
    s.g.resize(adj.size());
    int edges = 0;
    for (size_t v = 0; v < adj.size(); v++)
        for (int u : adj[v])
            if (static_cast<int>(v) < u) {
                s.g[v].insert(u);
                s.g[u].insert(static_cast<int>(v));
                edges++;
            }
    s.budget = nodeBudget;
    s.best = edges == 0 ? 0 : static_cast<int>(adj.size());
    s.run(0);
    if (s.exhausted) return std::nullopt;
    return s.best;
}

}  // namespace dirdes::vc
