#include "dirdes/matching.hpp"

#include <algorithm>
#include <queue>

namespace dirdes::matching {

namespace {

// Blossom-contraction augmenting search.
struct Blossom {
    int n;
    std::vector<std::vector<int>> adj;
    std::vector<int> mate, p, base;
    std::vector<bool> used, blossom;

    explicit Blossom(int n, const std::vector<std::pair<int, int>>& edges)
        : n(n), adj(n), mate(n, -1), p(n), base(n), used(n), blossom(n) {
        for (auto [a, b] : edges)
            if (a != b) {
                adj[a].push_back(b);
                adj[b].push_back(a);
            }
    }

    int lca(int a, int b) {
        std::vector<bool> seen(n, false);
        for (;;) {
            a = base[a];
            seen[a] = true;
            if (mate[a] == -1) break;
            a = p[mate[a]];
        }
        for (;;) {
            b = base[b];
            if (seen[b]) return b;
            b = p[mate[b]];
        }
    }

    void mark_path(int v, int b, int child) {
        while (base[v] != b) {
            blossom[base[v]] = true;
            blossom[base[mate[v]]] = true;
            p[v] = child;
            child = mate[v];
            v = p[mate[v]];
        }
    }

    int find_path(int root) {
        std::fill(used.begin(), used.end(), false);
        std::fill(p.begin(), p.end(), -1);
        for (int i = 0; i < n; i++) base[i] = i;
        used[root] = true;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int to : adj[v]) {
                if (base[v] == base[to] || mate[v] == to) continue;
                if (to == root || (mate[to] != -1 && p[mate[to]] != -1)) {
                    int curbase = lca(v, to);
                    std::fill(blossom.begin(), blossom.end(), false);
                    mark_path(v, curbase, to);
                    mark_path(to, curbase, v);
                    for (int i = 0; i < n; i++)
                        if (blossom[base[i]]) {
                            base[i] = curbase;
                            if (!used[i]) {
                                used[i] = true;
                                q.push(i);
                            }
                        }
                } else if (p[to] == -1) {
                    p[to] = v;
                    if (mate[to] == -1) return to;
                    used[mate[to]] = true;
                    q.push(mate[to]);
                }
            }
        }
        return -1;
    }

    void solve() {
        for (int v = 0; v < n; v++) {
            if (mate[v] != -1) continue;
            int u = find_path(v);
            while (u != -1) {
                int pv = p[u], ppv = mate[pv];
                mate[u] = pv;
                mate[pv] = u;
                u = ppv;
            }
        }
    }
};

}  // namespace

std::vector<int> max_matching(int n, const std::vector<std::pair<int, int>>& edges) {
    Blossom b(n, edges);
    b.solve();
    return b.mate;
}

}  // namespace dirdes::matching
