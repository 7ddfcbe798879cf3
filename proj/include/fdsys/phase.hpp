#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fdsys/system.hpp"

namespace fdsys {

// Phase space of a deterministic map: the functional digraph on all p^n
// configurations, decomposed into limit cycles and transient trees.
// Every vertex has out-degree exactly one; the successor pointer doubles as
// the tree-parent for transient states.
struct PhaseSpace {
    std::uint32_t p = 2;
    int n = 0;
    std::vector<std::uint64_t> succ;
    std::vector<std::vector<std::uint64_t>> cycles;  // each starts at its minimal state
    std::vector<std::uint64_t> period;               // length of the terminal cycle
    std::vector<std::uint64_t> tlen;                 // transient length; 0 = periodic

    std::uint64_t size() const { return succ.size(); }
    bool is_periodic(std::uint64_t v) const { return tlen[v] == 0; }

    std::uint64_t periodic_count() const {
        std::uint64_t k = 0;
        for (const auto& c : cycles) k += c.size();
        return k;
    }

    std::vector<std::vector<std::uint64_t>> predecessors() const {
        std::vector<std::vector<std::uint64_t>> pre(succ.size());
        for (std::uint64_t v = 0; v < succ.size(); ++v) pre[succ[v]].push_back(v);
        return pre;
    }
};

// Cycle/transient decomposition of an arbitrary successor table by pointer
// chasing with visitation stamps.
inline PhaseSpace decompose_successors(std::uint32_t p, int n,
                                       std::vector<std::uint64_t> succ) {
    PhaseSpace ps;
    ps.p = p;
    ps.n = n;
    std::uint64_t count = succ.size();
    ps.succ = std::move(succ);
    ps.period.assign(count, 0);
    ps.tlen.assign(count, 0);

    // 0 = unseen, 1 = on current path, 2 = resolved
    std::vector<std::uint8_t> state(count, 0);
    std::vector<std::uint64_t> path;
    for (std::uint64_t start = 0; start < count; ++start) {
        if (state[start]) continue;
        path.clear();
        std::uint64_t v = start;
        while (state[v] == 0) {
            state[v] = 1;
            path.push_back(v);
            v = ps.succ[v];
        }
        std::uint64_t base_tlen;
        std::uint64_t per;
        if (state[v] == 1) {
            // Found a new cycle: v is the first repeated vertex on the path.
            std::size_t pos = path.size();
            while (path[pos - 1] != v) --pos;
            --pos;
            per = path.size() - pos;
            std::vector<std::uint64_t> cyc(path.begin() + pos, path.end());
            std::size_t min_at = 0;
            for (std::size_t i = 1; i < cyc.size(); ++i)
                if (cyc[i] < cyc[min_at]) min_at = i;
            std::rotate(cyc.begin(), cyc.begin() + min_at, cyc.end());
            for (std::uint64_t u : cyc) {
                ps.period[u] = per;
                ps.tlen[u] = 0;
                state[u] = 2;
            }
            ps.cycles.push_back(std::move(cyc));
            path.resize(pos);
            base_tlen = 1;
        } else {
            per = ps.period[v];
            base_tlen = ps.tlen[v] + 1;
        }
        for (std::size_t i = path.size(); i-- > 0; ++base_tlen) {
            std::uint64_t u = path[i];
            ps.period[u] = per;
            ps.tlen[u] = base_tlen;
            state[u] = 2;
        }
    }
    std::sort(ps.cycles.begin(), ps.cycles.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return ps;
}

inline PhaseSpace enumerate_phase_space(const System& s, const Mode& m,
                                        std::uint64_t budget = kDefaultBudget) {
    return decompose_successors(s.p, s.n, materialize_global(s, m, budget));
}

inline std::vector<Configuration> fixed_points(const System& s, const Mode& m,
                                               std::uint64_t budget = kDefaultBudget) {
    std::uint64_t count = state_count(s, budget);
    std::vector<Configuration> out;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        Configuration c = decode_config(idx, s.p, s.n);
        if (step(s, m, c) == c) out.push_back(std::move(c));
    }
    return out;
}

// Deterministic configuration reachability: iterate from `from` at most p^n
// steps; returns the first hitting time of `to` if it is ever reached.
inline std::optional<std::uint64_t> reachable(const System& s, const Mode& m,
                                              const Configuration& from,
                                              const Configuration& to,
                                              std::uint64_t budget = kDefaultBudget) {
    check_config(s, from);
    check_config(s, to);
    std::uint64_t count = state_count(s, budget);
    Configuration c = from;
    for (std::uint64_t t = 0; t <= count; ++t) {
        if (c == to) return t;
        c = step(s, m, c);
    }
    return std::nullopt;
}

inline bool is_invertible(const System& s, const Mode& m,
                          std::uint64_t budget = kDefaultBudget) {
    std::uint64_t count = state_count(s, budget);
    std::vector<bool> hit(count, false);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::uint64_t img = encode_config(step(s, m, decode_config(idx, s.p, s.n)), s.p);
        if (hit[img]) return false;
        hit[img] = true;
    }
    return true;
}

}  // namespace fdsys
