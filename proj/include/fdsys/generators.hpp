#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "fdsys/graph.hpp"
#include "fdsys/specfile.hpp"

namespace fdsys {

// The 4-variable XOR example system: f1 = x1+x2+x3+x4, fk = x1+xk.
inline ParsedSpec gen_runex(const Mode& mode) {
    ParsedSpec spec;
    spec.p = 2;
    spec.n = 4;
    auto v = [&](int i) { return MPoly::var(2, 4, i); };
    spec.locals = {v(0) + v(1) + v(2) + v(3), v(0) + v(1), v(0) + v(2), v(0) + v(3)};
    spec.mode = mode;
    return spec;
}

// Same locals as a two-member stochastic system: update order (2,1,3,4) or
// the identity order, each with probability 1/2.
inline ParsedSpec gen_runex_stochastic() {
    ParsedSpec spec = gen_runex(Mode::parallel());
    spec.members.emplace_back(Rational(1, 2), Mode::with_word(UpdateWord{{1, 0, 2, 3}}));
    spec.members.emplace_back(Rational(1, 2), Mode::with_word(UpdateWord{{0, 1, 2, 3}}));
    return spec;
}

inline SimpleGraph star_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i < n; ++i) edges.emplace_back(0, i);
    return SimpleGraph(n, std::move(edges));
}

// Opportunistic voters on a friendship graph: each casts the majority
// preference of the closed neighborhood, ties going to candidate 1.
inline ParsedSpec gen_voting(const SimpleGraph& g, const Mode& mode) {
    if (g.n < 1) throw InvalidParams("voting needs at least one voter");
    ParsedSpec spec;
    spec.p = 2;
    spec.n = g.n;
    std::uint64_t count = checked_state_count(2, g.n, kDefaultBudget);
    for (int i = 0; i < g.n; ++i) {
        std::vector<int> nb = g.neighbors(i);
        nb.push_back(i);
        std::vector<std::uint32_t> table(count);
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            Configuration c = decode_config(idx, 2, g.n);
            int ones = 0;
            for (int j : nb) ones += c[j];
            table[idx] = 2 * ones >= static_cast<int>(nb.size()) ? 1 : 0;
        }
        spec.locals.push_back(mp_interpolate(2, g.n, table));
    }
    spec.mode = mode;
    return spec;
}

// Discrete Hopfield network mapped onto GF(2): spin +1 is state 1, spin -1 is
// state 0; node i computes sgn(-tau_i + sum_j w_ij s_j) with sgn(0) = +1.
inline ParsedSpec gen_hopfield(const std::vector<std::vector<double>>& weights,
                               const std::vector<double>& thresholds,
                               const Mode& mode) {
    int n = static_cast<int>(weights.size());
    if (n == 0) throw InvalidParams("hopfield needs at least one node");
    if (static_cast<int>(thresholds.size()) != n)
        throw InvalidParams("threshold count differs from node count");
    for (const auto& row : weights)
        if (static_cast<int>(row.size()) != n)
            throw InvalidParams("weight matrix is not square");
    ParsedSpec spec;
    spec.p = 2;
    spec.n = n;
    std::uint64_t count = checked_state_count(2, n, kDefaultBudget);
    for (int i = 0; i < n; ++i) {
        std::vector<std::uint32_t> table(count);
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            Configuration c = decode_config(idx, 2, n);
            double act = -thresholds[i];
            for (int j = 0; j < n; ++j) act += weights[i][j] * (c[j] ? 1.0 : -1.0);
            table[idx] = act >= 0 ? 1 : 0;
        }
        spec.locals.push_back(mp_interpolate(2, n, table));
    }
    spec.mode = mode;
    return spec;
}

namespace detail {

constexpr std::uint32_t kTrafficEmpty = 6;
constexpr int kTrafficVmax = 5;

// Velocity after the acceleration/braking phase for the car at cell j.
inline std::uint32_t traffic_accel(const std::vector<std::uint32_t>& cells, int j,
                                   bool decelerate) {
    int len = static_cast<int>(cells.size());
    int scan = std::min(kTrafficVmax, len - 1);
    int gap = scan;
    for (int d = 1; d <= scan; ++d) {
        if (cells[(j + d) % len] != kTrafficEmpty) {
            gap = d - 1;
            break;
        }
    }
    int v = static_cast<int>(cells[j]);
    v = std::min({v + 1, kTrafficVmax, gap});
    if (decelerate) v = std::max(v - 1, 0);
    return static_cast<std::uint32_t>(v);
}

// Occupancy of cell i after the movement phase: the nearest car behind (or
// at) i whose velocity carries it exactly onto i.
inline std::uint32_t traffic_move(const std::vector<std::uint32_t>& cells, int i) {
    int len = static_cast<int>(cells.size());
    for (int d = 0; d <= std::min(kTrafficVmax, len - 1); ++d) {
        int j = (i - d + len) % len;
        if (cells[j] == kTrafficEmpty) continue;
        if ((j + static_cast<int>(cells[j])) % len == i) return cells[j];
    }
    return kTrafficEmpty;
}

}  // namespace detail

struct TrafficSpec {
    ParsedSpec spec;
    Configuration suggested_init;
};

// Single-lane ring road in the cell representation: cell value 0..5 is the
// velocity of the occupying car, 6 means empty. One extra variable holds the
// two-phase schedule (0: acceleration/braking is next, 1: movement is next),
// so one full road second is two system steps. Random deceleration is the
// per-cell function choice and only takes effect in the acceleration phase,
// which keeps the coin attached to the car sitting in that cell.
inline TrafficSpec gen_traffic(int cells, int cars, const Rational& pdec) {
    if (cells < 2 || cells > 4)
        throw InvalidParams("ring length must be 2..4 (exact tabulation over GF(7)^"
                            "(cells+1) grows too fast beyond that)");
    if (cars < 0 || cars > cells) throw InvalidParams("car count must be 0..cells");
    if (pdec < 0 || pdec > 1) throw InvalidParams("deceleration probability outside [0, 1]");

    ParsedSpec spec;
    spec.p = 7;
    int n = cells + 1;
    spec.n = n;
    spec.mode = Mode::parallel();
    spec.locals.assign(n, MPoly::zero(7, n));
    spec.choices.assign(n, {});

    std::uint64_t count = checked_state_count(7, n, kDefaultBudget);
    auto cell_table = [&](int i, bool decelerate) {
        std::vector<std::uint32_t> table(count);
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            Configuration c = decode_config(idx, 7, n);
            std::vector<std::uint32_t> road(c.begin(), c.begin() + cells);
            std::uint32_t phase = c[cells];
            std::uint32_t out;
            if (phase == 0)
                out = road[i] == detail::kTrafficEmpty
                          ? detail::kTrafficEmpty
                          : detail::traffic_accel(road, i, decelerate);
            else if (phase == 1)
                out = detail::traffic_move(road, i);
            else
                out = road[i];  // junk phase values act as the identity
            table[idx] = out;
        }
        return table;
    };

    for (int i = 0; i < cells; ++i) {
        MPoly keep = mp_interpolate(7, n, cell_table(i, false));
        if (pdec == 0) {
            spec.choices[i].push_back(PfdsChoice{std::move(keep), Rational(1)});
            continue;
        }
        MPoly slow = mp_interpolate(7, n, cell_table(i, true));
        if (pdec == 1) {
            spec.choices[i].push_back(PfdsChoice{std::move(slow), Rational(1)});
            continue;
        }
        spec.choices[i].push_back(PfdsChoice{std::move(keep), Rational(1) - pdec});
        spec.choices[i].push_back(PfdsChoice{std::move(slow), pdec});
    }

    // Phase flag toggles 0 <-> 1 and leaves junk values alone.
    MPoly toggle = MPoly::zero(7, n);
    MPoly xph = MPoly::var(7, n, cells);
    for (std::uint32_t c = 0; c < 7; ++c) {
        std::uint32_t target = c == 0 ? 1 : (c == 1 ? 0 : c);
        if (target == 0) continue;
        MPoly indicator = MPoly::constant(7, n, 1) -
                          (xph - MPoly::constant(7, n, c)).pow(6);
        toggle = toggle + indicator.scaled(target);
    }
    spec.choices[cells].push_back(PfdsChoice{std::move(toggle), Rational(1)});

    TrafficSpec out{std::move(spec), Configuration(n, detail::kTrafficEmpty)};
    out.suggested_init[cells] = 0;  // acceleration phase first
    for (int k = 0; k < cars; ++k) {
        int pos = static_cast<int>(std::int64_t(k) * cells / cars);
        out.suggested_init[pos] = 0;  // parked car
    }
    return out;
}

// NOR at every vertex of Y, on closed neighborhoods: the locals whose SDS
// maps realize the full Acyc(Y) bound and whose periodic states match the
// independent sets of Y.
inline System nor_system(const SimpleGraph& g) {
    std::vector<MPoly> locals;
    for (int i = 0; i < g.n; ++i) {
        MPoly f = MPoly::constant(2, g.n, 1) + MPoly::var(2, g.n, i);
        for (int j : g.neighbors(i))
            f = f * (MPoly::constant(2, g.n, 1) + MPoly::var(2, g.n, j));
        locals.push_back(std::move(f));
    }
    return build_system(2, std::move(locals));
}

// Parity (sum of the closed neighborhood), optionally complemented.
inline System parity_system(const SimpleGraph& g, bool complemented = false) {
    std::vector<MPoly> locals;
    for (int i = 0; i < g.n; ++i) {
        MPoly f = MPoly::var(2, g.n, i);
        for (int j : g.neighbors(i)) f = f + MPoly::var(2, g.n, j);
        if (complemented) f = f + MPoly::constant(2, g.n, 1);
        locals.push_back(std::move(f));
    }
    return build_system(2, std::move(locals));
}

}  // namespace fdsys
