#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <queue>
#include <vector>

#include "fdsys/errors.hpp"

namespace fdsys {

struct Digraph {
    int n = 0;
    std::vector<std::vector<int>> adj;

    explicit Digraph(int n_ = 0) : n(n_), adj(n_) {}
    void add_edge(int u, int v) { adj[u].push_back(v); }
};

// Kosaraju. Components are sorted internally and listed by minimal vertex.
inline std::vector<std::vector<int>> strongly_connected_components(const Digraph& g) {
    std::vector<int> order;
    order.reserve(g.n);
    std::vector<bool> seen(g.n, false);
    std::vector<std::pair<int, std::size_t>> stack;
    for (int s = 0; s < g.n; ++s) {
        if (seen[s]) continue;
        seen[s] = true;
        stack.emplace_back(s, 0);
        while (!stack.empty()) {
            auto& [v, i] = stack.back();
            if (i < g.adj[v].size()) {
                int w = g.adj[v][i++];
                if (!seen[w]) {
                    seen[w] = true;
                    stack.emplace_back(w, 0);
                }
            } else {
                order.push_back(v);
                stack.pop_back();
            }
        }
    }
    Digraph rev(g.n);
    for (int u = 0; u < g.n; ++u)
        for (int v : g.adj[u]) rev.add_edge(v, u);
    std::vector<std::vector<int>> comps;
    std::vector<bool> used(g.n, false);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (used[*it]) continue;
        std::vector<int> comp;
        std::vector<int> dfs{*it};
        used[*it] = true;
        while (!dfs.empty()) {
            int v = dfs.back();
            dfs.pop_back();
            comp.push_back(v);
            for (int w : rev.adj[v])
                if (!used[w]) {
                    used[w] = true;
                    dfs.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    std::sort(comps.begin(), comps.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return comps;
}

// Period of a strongly connected component: gcd of the lengths of all closed
// walks through any of its vertices. Computed as the gcd of level(u)+1-level(v)
// over internal edges u->v, with BFS levels from an arbitrary root. Returns 0
// for a single vertex without a self-loop (no closed walk at all).
inline int component_period(const Digraph& g, const std::vector<int>& comp) {
    std::vector<bool> in_comp_all(g.n, false);
    for (int v : comp) in_comp_all[v] = true;
    bool has_internal_edge = false;
    for (int u : comp)
        for (int v : g.adj[u])
            if (in_comp_all[v]) has_internal_edge = true;
    if (!has_internal_edge) return 0;

    std::vector<int> level(g.n, -1);
    int root = comp.front();
    level[root] = 0;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : g.adj[u]) {
            if (!in_comp_all[v] || level[v] >= 0) continue;
            level[v] = level[u] + 1;
            q.push(v);
        }
    }
    long long period = 0;
    for (int u : comp)
        for (int v : g.adj[u]) {
            if (!in_comp_all[v]) continue;
            long long diff = level[u] + 1 - level[v];
            period = std::gcd(period, diff < 0 ? -diff : diff);
        }
    return static_cast<int>(period);
}

// Simple undirected graph on 0..n-1, edges stored as ordered pairs i < j.
struct SimpleGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;

    SimpleGraph() = default;
    SimpleGraph(int n_, std::vector<std::pair<int, int>> edges_) : n(n_) {
        for (auto [a, b] : edges_) {
            if (a == b) continue;  // simple graph: drop self-loops
            if (a > b) std::swap(a, b);
            if (a < 0 || b >= n) throw IndexOutOfRange("edge endpoint");
            edges.emplace_back(a, b);
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    }

    bool adjacent(int a, int b) const {
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        return std::binary_search(edges.begin(), edges.end(), std::make_pair(a, b));
    }

    std::vector<int> neighbors(int v) const {
        std::vector<int> out;
        for (auto [a, b] : edges) {
            if (a == v) out.push_back(b);
            if (b == v) out.push_back(a);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    int edge_index(int a, int b) const {
        if (a > b) std::swap(a, b);
        auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(a, b));
        if (it == edges.end() || *it != std::make_pair(a, b))
            throw IndexOutOfRange("no such edge");
        return static_cast<int>(it - edges.begin());
    }

    bool connected() const {
        if (n == 0) return true;
        std::vector<bool> seen(n, false);
        std::vector<int> dfs{0};
        seen[0] = true;
        int cnt = 1;
        while (!dfs.empty()) {
            int v = dfs.back();
            dfs.pop_back();
            for (int w : neighbors(v))
                if (!seen[w]) {
                    seen[w] = true;
                    ++cnt;
                    dfs.push_back(w);
                }
        }
        return cnt == n;
    }
};

}  // namespace fdsys
