#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "fdsys/graph.hpp"
#include "fdsys/system.hpp"

namespace fdsys {

// The undirected graph Y behind a system's dependency relation: self-loops
// stripped, directions dropped. Refuses if the relation between distinct
// variables is asymmetric; the update-order theory assumes undirected Y.
inline SimpleGraph undirected_dependency(const System& s) {
    if (!s.symmetric) throw GraphNotSymmetric();
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < s.n; ++i)
        for (int j : s.dep_out[i])
            if (i < j) edges.emplace_back(i, j);
    return SimpleGraph(s.n, std::move(edges));
}

// One direction per edge of Y; dir[e] true means edge (i,j) with i < j is
// oriented i -> j.
struct AcyclicOrientation {
    SimpleGraph y;
    std::vector<bool> dir;

    bool operator==(const AcyclicOrientation& o) const {
        return y.edges == o.y.edges && dir == o.dir;
    }
    bool operator<(const AcyclicOrientation& o) const { return dir < o.dir; }
};

inline void check_permutation(const SimpleGraph& y, const std::vector<int>& pi) {
    UpdateWord w{pi};
    if (!w.is_permutation(y.n))
        throw NotPermutation("expected a permutation of 1.." + std::to_string(y.n));
}

// Orient each edge from the earlier to the later entry of the permutation.
// Acyclic by construction.
inline AcyclicOrientation induced_orientation(const SimpleGraph& y,
                                              const std::vector<int>& pi) {
    check_permutation(y, pi);
    std::vector<int> pos(y.n);
    for (int k = 0; k < y.n; ++k) pos[pi[k]] = k;
    AcyclicOrientation o{y, std::vector<bool>(y.edges.size())};
    for (std::size_t e = 0; e < y.edges.size(); ++e) {
        auto [i, j] = y.edges[e];
        o.dir[e] = pos[i] < pos[j];
    }
    return o;
}

inline bool orientation_is_acyclic(const SimpleGraph& y, const std::vector<bool>& dir) {
    Digraph g(y.n);
    for (std::size_t e = 0; e < y.edges.size(); ++e) {
        auto [i, j] = y.edges[e];
        if (dir[e])
            g.add_edge(i, j);
        else
            g.add_edge(j, i);
    }
    // acyclic iff every SCC is a single vertex
    for (const auto& comp : strongly_connected_components(g))
        if (comp.size() > 1) return false;
    return true;
}

// All acyclic orientations, by exhaustive filtering of the 2^|E| direction
// vectors, in direction-bitmask order.
inline std::vector<AcyclicOrientation> enumerate_acyclic_orientations(
    const SimpleGraph& y, std::size_t max_edges = 20) {
    if (y.edges.size() > max_edges)
        throw BudgetExceeded("graph has " + std::to_string(y.edges.size()) +
                             " edges, exhaustive orientation limit is " +
                             std::to_string(max_edges));
    std::vector<AcyclicOrientation> out;
    std::uint64_t total = std::uint64_t(1) << y.edges.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        std::vector<bool> dir(y.edges.size());
        for (std::size_t e = 0; e < y.edges.size(); ++e) dir[e] = (mask >> e) & 1;
        if (orientation_is_acyclic(y, dir)) out.push_back(AcyclicOrientation{y, dir});
    }
    return out;
}

struct UpdateGraphSummary {
    std::uint64_t permutation_count = 0;
    std::uint64_t component_count = 0;
    // Per component: lexicographically smallest member and the induced
    // acyclic orientation shared by all members.
    std::vector<std::vector<int>> representatives;
    std::vector<AcyclicOrientation> orientations;
    bool bijection_verified = false;  // component count == |Acyc(Y)|, orientations distinct
};

namespace detail {

// Lehmer rank in the factorial number system. Lets the component search keep
// one visited bit per vertex of U(Y) without materializing the permutations.
inline std::uint64_t perm_rank(const std::vector<int>& pi) {
    int n = static_cast<int>(pi.size());
    std::uint64_t rank = 0;
    for (int k = 0; k < n; ++k) {
        int smaller = 0;
        for (int j = k + 1; j < n; ++j)
            if (pi[j] < pi[k]) ++smaller;
        rank = rank * (n - k) + smaller;
    }
    return rank;
}

inline std::vector<int> perm_unrank(std::uint64_t rank, int n) {
    std::vector<int> digits(n, 0);
    for (int k = n - 1; k >= 0; --k) {
        digits[k] = static_cast<int>(rank % (n - k));
        rank /= (n - k);
    }
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    std::vector<int> pi(n);
    for (int k = 0; k < n; ++k) {
        pi[k] = pool[digits[k]];
        pool.erase(pool.begin() + digits[k]);
    }
    return pi;
}

}  // namespace detail

// Finds the connected components of the update graph U(Y) on all n!
// permutations (adjacent when they differ by a swap of consecutive entries
// not joined in Y) and checks the bijection with Acyc(Y). U(Y) stays
// implicit: neighbors come from the adjacent-transposition rule and only a
// visited flag per permutation rank is stored.
inline UpdateGraphSummary update_graph_components(const SimpleGraph& y,
                                                  int max_vertices = 8) {
    if (y.n > max_vertices)
        throw BudgetExceeded("update graph on " + std::to_string(y.n) +
                             "! permutations exceeds the n <= " +
                             std::to_string(max_vertices) + " budget");
    std::uint64_t total = 1;
    for (int i = 2; i <= y.n; ++i) total *= i;

    UpdateGraphSummary sum;
    sum.permutation_count = total;
    std::vector<bool> seen(total, false);
    for (std::uint64_t s = 0; s < total; ++s) {
        if (seen[s]) continue;
        seen[s] = true;
        std::vector<std::uint64_t> stack{s};
        std::vector<int> rep = detail::perm_unrank(s, y.n);
        while (!stack.empty()) {
            std::vector<int> cur = detail::perm_unrank(stack.back(), y.n);
            stack.pop_back();
            if (cur < rep) rep = cur;
            for (int k = 0; k + 1 < y.n; ++k) {
                if (y.adjacent(cur[k], cur[k + 1])) continue;
                std::swap(cur[k], cur[k + 1]);
                std::uint64_t w = detail::perm_rank(cur);
                std::swap(cur[k], cur[k + 1]);
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            }
        }
        ++sum.component_count;
        sum.orientations.push_back(induced_orientation(y, rep));
        sum.representatives.push_back(std::move(rep));
    }

    auto acyc = enumerate_acyclic_orientations(y);
    std::vector<AcyclicOrientation> got = sum.orientations;
    std::sort(got.begin(), got.end());
    sum.bijection_verified =
        got.size() == acyc.size() &&
        std::adjacent_find(got.begin(), got.end()) == got.end();
    return sum;
}

// sigma and tau give the identical SDS map for any local functions on Y iff
// they induce the same acyclic orientation.
inline bool same_sds(const SimpleGraph& y, const std::vector<int>& sigma,
                     const std::vector<int>& tau) {
    return induced_orientation(y, sigma) == induced_orientation(y, tau);
}

// |Acyc(Y)|: the number of functionally inequivalent SDS obtainable by
// varying the permutation update order (an upper bound in general, sharp for
// suitable NOR systems).
inline std::uint64_t count_inequivalent(const SimpleGraph& y) {
    return enumerate_acyclic_orientations(y).size();
}

}  // namespace fdsys
