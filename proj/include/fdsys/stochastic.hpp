#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fdsys/graph.hpp"
#include "fdsys/phase.hpp"
#include "fdsys/rng.hpp"
#include "fdsys/system.hpp"

namespace fdsys {

using Rational = boost::multiprecision::cpp_rational;

// Accepts "1/2", "0.25" and plain integers; kept exact from parse to matrix.
inline Rational parse_rational(const std::string& text) {
    auto bad = [&] { return InvalidParams("cannot parse probability '" + text + "'"); };
    // strict decimal digits (cpp_int's string constructor would read 025 as octal)
    auto digits_value = [&](const std::string& d) {
        if (d.empty()) throw bad();
        boost::multiprecision::cpp_int v = 0;
        for (char c : d) {
            if (c < '0' || c > '9') throw bad();
            v = v * 10 + (c - '0');
        }
        return v;
    };
    std::string s = text;
    if (s.empty()) throw bad();
    std::size_t slash = s.find('/');
    if (slash != std::string::npos) {
        boost::multiprecision::cpp_int den = digits_value(s.substr(slash + 1));
        if (den == 0) throw bad();
        return Rational(digits_value(s.substr(0, slash))) / Rational(den);
    }
    std::size_t dot = s.find('.');
    if (dot == std::string::npos) return Rational(digits_value(s));
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t places = s.size() - dot - 1;
    if (places == 0) throw bad();
    boost::multiprecision::cpp_int den = 1;
    for (std::size_t i = 0; i < places; ++i) den *= 10;
    return Rational(digits_value(digits)) / Rational(den);
}

inline std::string rational_to_string(const Rational& r) {
    std::string s = boost::multiprecision::numerator(r).str();
    if (boost::multiprecision::denominator(r) != 1)
        s += "/" + boost::multiprecision::denominator(r).str();
    return s;
}

// SFDS: a finite collection of deterministic systems (shared p and n), one
// chosen at random per step.
struct SfdsMember {
    System sys;
    Mode mode;
    Rational prob;
};

struct Sfds {
    std::vector<SfdsMember> members;
};

// PFDS: per variable, a distribution over local functions; when a variable is
// updated it draws one of its functions independently.
struct PfdsChoice {
    MPoly f;
    Rational prob;
};

struct Pfds {
    std::uint32_t p = 2;
    int n = 0;
    std::vector<std::vector<PfdsChoice>> choices;  // choices[i] sums to 1
    Mode mode;
};

using StochasticSystem = std::variant<Sfds, Pfds>;

// Distributions must sum to 1; float-derived inputs get a 1e-12 slack.
inline bool sums_to_one(const Rational& sum) {
    Rational slack(1, boost::multiprecision::cpp_int("1000000000000"));
    return sum >= 1 - slack && sum <= 1 + slack;
}

inline std::uint32_t stoch_modulus(const StochasticSystem& ss) {
    if (const auto* s = std::get_if<Sfds>(&ss)) return s->members.at(0).sys.p;
    return std::get<Pfds>(ss).p;
}

inline int stoch_arity(const StochasticSystem& ss) {
    if (const auto* s = std::get_if<Sfds>(&ss)) return s->members.at(0).sys.n;
    return std::get<Pfds>(ss).n;
}

inline void validate(const StochasticSystem& ss) {
    if (const auto* s = std::get_if<Sfds>(&ss)) {
        if (s->members.empty()) throw InvalidParams("SFDS needs at least one member");
        Rational sum = 0;
        for (const auto& m : s->members) {
            if (m.prob < 0 || m.prob > 1)
                throw InvalidParams("member probability outside [0, 1]");
            if (m.sys.p != s->members[0].sys.p)
                throw ModulusMismatch(m.sys.p, s->members[0].sys.p);
            if (m.sys.n != s->members[0].sys.n)
                throw ArityMismatch("SFDS members disagree on variable count");
            sum += m.prob;
        }
        if (!sums_to_one(sum)) throw InvalidParams("member probabilities sum to " +
                                          rational_to_string(sum) + ", expected 1");
    } else {
        const auto& pf = std::get<Pfds>(ss);
        if (static_cast<int>(pf.choices.size()) != pf.n)
            throw ArityMismatch("PFDS choice lists vs variable count");
        for (int i = 0; i < pf.n; ++i) {
            if (pf.choices[i].empty())
                throw InvalidParams("variable " + std::to_string(i + 1) +
                                    " has no local functions");
            Rational sum = 0;
            for (const auto& ch : pf.choices[i]) {
                if (ch.prob < 0 || ch.prob > 1)
                    throw InvalidParams("function probability outside [0, 1]");
                if (ch.f.modulus() != pf.p) throw ModulusMismatch(ch.f.modulus(), pf.p);
                if (ch.f.arity() != pf.n) throw ArityMismatch("PFDS local arity");
                sum += ch.prob;
            }
            if (!sums_to_one(sum))
                throw InvalidParams("probabilities for variable " + std::to_string(i + 1) +
                                    " sum to " + rational_to_string(sum) + ", expected 1");
        }
    }
}

// Row-stochastic sparse matrix over exact rationals; also serves as the
// weighted digraph Gamma_Omega (zero-weight edges are never stored).
struct StochMatrix {
    std::uint64_t nstates = 0;
    std::vector<std::map<std::uint64_t, Rational>> rows;

    void add(std::uint64_t u, std::uint64_t v, const Rational& w) {
        if (w == 0) return;
        auto [it, fresh] = rows[u].emplace(v, w);
        if (!fresh) it->second += w;
    }

    Rational row_sum(std::uint64_t u) const {
        Rational s = 0;
        for (const auto& [v, w] : rows[u]) s += w;
        return s;
    }
};

namespace detail {

inline void pfds_check_word(const Pfds& pf) {
    if (pf.mode.is_parallel()) return;
    for (int i : pf.mode.word.seq)
        if (i < 0 || i >= pf.n)
            throw IndexOutOfRange("word entry " + std::to_string(i + 1));
}

// Transition matrix of a single PFDS mini-step that rewrites variable i only.
inline StochMatrix pfds_ministep_matrix(const Pfds& pf, int var, std::uint64_t count) {
    StochMatrix m;
    m.nstates = count;
    m.rows.resize(count);
    for (std::uint64_t u = 0; u < count; ++u) {
        Configuration c = decode_config(u, pf.p, pf.n);
        for (const auto& ch : pf.choices[var]) {
            Configuration d = c;
            d[var] = ch.f.eval(c);
            m.add(u, encode_config(d, pf.p), ch.prob);
        }
    }
    return m;
}

inline StochMatrix multiply(const StochMatrix& a, const StochMatrix& b) {
    StochMatrix m;
    m.nstates = a.nstates;
    m.rows.resize(a.nstates);
    for (std::uint64_t u = 0; u < a.nstates; ++u)
        for (const auto& [mid, w1] : a.rows[u])
            for (const auto& [v, w2] : b.rows[mid]) m.add(u, v, w1 * w2);
    return m;
}

}  // namespace detail

// The Markov transition matrix encoded by the stochastic phase space
// Gamma_Omega = p_1 Gamma_1 + ... + p_t Gamma_t. SFDS: the weighted
// superposition of the members' deterministic tables. PFDS parallel: per-row
// tensor product of the per-variable next-value distributions; PFDS word:
// product of mini-step matrices in word order.
inline StochMatrix transition_matrix(const StochasticSystem& ss,
                                     std::uint64_t budget = kDefaultBudget) {
    validate(ss);
    StochMatrix m;
    if (const auto* s = std::get_if<Sfds>(&ss)) {
        std::uint64_t count = state_count(s->members[0].sys, budget);
        m.nstates = count;
        m.rows.resize(count);
        for (const auto& member : s->members) {
            auto table = materialize_global(member.sys, member.mode, budget);
            for (std::uint64_t u = 0; u < count; ++u) m.add(u, table[u], member.prob);
        }
        return m;
    }
    const auto& pf = std::get<Pfds>(ss);
    std::uint64_t count = checked_state_count(pf.p, pf.n, budget);
    detail::pfds_check_word(pf);
    if (!pf.mode.is_parallel()) {
        bool first = true;
        for (int i : pf.mode.word.seq) {
            StochMatrix step = detail::pfds_ministep_matrix(pf, i, count);
            m = first ? std::move(step) : detail::multiply(m, step);
            first = false;
        }
        return m;
    }
    m.nstates = count;
    m.rows.resize(count);
    for (std::uint64_t u = 0; u < count; ++u) {
        Configuration c = decode_config(u, pf.p, pf.n);
        // next-value distribution per variable, then the product measure
        std::vector<std::map<std::uint32_t, Rational>> dist(pf.n);
        for (int i = 0; i < pf.n; ++i)
            for (const auto& ch : pf.choices[i]) {
                auto [it, fresh] = dist[i].emplace(ch.f.eval(c), ch.prob);
                if (!fresh) it->second += ch.prob;
            }
        std::vector<std::pair<std::uint64_t, Rational>> partial{{0, 1}};
        std::uint64_t place = 1;
        for (int i = 0; i < pf.n; ++i) {
            std::vector<std::pair<std::uint64_t, Rational>> next;
            next.reserve(partial.size() * dist[i].size());
            for (const auto& [idx, w] : partial)
                for (const auto& [val, q] : dist[i])
                    next.emplace_back(idx + place * val, w * q);
            partial = std::move(next);
            place *= pf.p;
        }
        for (const auto& [v, w] : partial) m.add(u, v, w);
    }
    return m;
}

struct StochasticPhaseSpace {
    std::uint32_t p = 2;
    int n = 0;
    StochMatrix graph;
};

inline StochasticPhaseSpace stochastic_phase_space(const StochasticSystem& ss,
                                                   std::uint64_t budget = kDefaultBudget) {
    StochasticPhaseSpace sps;
    sps.p = stoch_modulus(ss);
    sps.n = stoch_arity(ss);
    sps.graph = transition_matrix(ss, budget);
    return sps;
}

struct StationaryClass {
    std::vector<std::uint64_t> states;  // sorted
    std::vector<double> probability;    // aligned with states
    int period = 1;
};

// Extreme stationary distributions, one per recurrent class (terminal SCC of
// the positive-weight digraph). Solved by power iteration; periodic classes
// are handled by averaging the iterates over one period.
inline std::vector<StationaryClass> stationary_distribution(const StochMatrix& m,
                                                            double tol = 1e-10,
                                                            std::uint64_t max_iters = 200000) {
    std::uint64_t count = m.nstates;
    Digraph g(static_cast<int>(count));
    for (std::uint64_t u = 0; u < count; ++u)
        for (const auto& [v, w] : m.rows[u]) g.add_edge(static_cast<int>(u),
                                                        static_cast<int>(v));
    auto comps = strongly_connected_components(g);
    std::vector<int> comp_of(count, -1);
    for (std::size_t k = 0; k < comps.size(); ++k)
        for (int v : comps[k]) comp_of[v] = static_cast<int>(k);

    std::vector<StationaryClass> out;
    for (std::size_t k = 0; k < comps.size(); ++k) {
        bool terminal = true;
        for (int u : comps[k])
            for (const auto& [v, w] : m.rows[u])
                if (comp_of[v] != static_cast<int>(k)) terminal = false;
        if (!terminal) continue;

        StationaryClass cls;
        for (int v : comps[k]) cls.states.push_back(v);
        std::size_t sz = cls.states.size();
        std::map<std::uint64_t, std::size_t> local;
        for (std::size_t i = 0; i < sz; ++i) local[cls.states[i]] = i;

        // restriction of M to the class, as doubles
        std::vector<std::vector<std::pair<std::size_t, double>>> rows(sz);
        for (std::size_t i = 0; i < sz; ++i)
            for (const auto& [v, w] : m.rows[cls.states[i]])
                rows[i].emplace_back(local.at(v), static_cast<double>(w));

        cls.period = std::max(1, component_period(g, comps[k]));

        auto apply = [&](const std::vector<double>& x) {
            std::vector<double> y(sz, 0.0);
            for (std::size_t i = 0; i < sz; ++i)
                for (const auto& [j, w] : rows[i]) y[j] += x[i] * w;
            return y;
        };

        std::vector<double> x(sz, 1.0 / double(sz));
        bool converged = false;
        for (std::uint64_t it = 0; it < max_iters; ++it) {
            // Cesaro average over one period of iterates
            std::vector<double> avg(sz, 0.0);
            std::vector<double> cur = x;
            for (int j = 0; j < cls.period; ++j) {
                for (std::size_t i = 0; i < sz; ++i) avg[i] += cur[i];
                cur = apply(cur);
            }
            for (auto& v : avg) v /= cls.period;
            std::vector<double> avg_next = apply(avg);
            double resid = 0;
            for (std::size_t i = 0; i < sz; ++i) resid += std::abs(avg_next[i] - avg[i]);
            if (resid < tol) {
                cls.probability = std::move(avg);
                converged = true;
                break;
            }
            x = apply(x);
        }
        if (!converged)
            throw ConvergenceFailure("stationary distribution did not converge to " +
                                     std::to_string(tol));
        out.push_back(std::move(cls));
    }
    return out;
}

namespace detail {

// Draw from a rational distribution with a 64-bit uniform variate, compared
// exactly against the cumulative weights.
template <class Prob>
inline std::size_t draw_index(SplitMix64& rng, const std::vector<Prob>& probs) {
    Rational u(rng.next());
    u /= Rational(boost::multiprecision::cpp_int(1) << 64);
    Rational cum = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        cum += probs[i];
        if (u < cum) return i;
    }
    return probs.size() - 1;
}

}  // namespace detail

// Seeded trajectory of `steps` transitions; trajectory[0] = c0. Identical
// seeds give identical trajectories.
inline std::vector<Configuration> simulate(const StochasticSystem& ss,
                                           const Configuration& c0,
                                           std::uint64_t steps, std::uint64_t seed) {
    validate(ss);
    std::uint32_t p = stoch_modulus(ss);
    int n = stoch_arity(ss);
    if (static_cast<int>(c0.size()) != n)
        throw ArityMismatch("initial configuration size " + std::to_string(c0.size()));
    std::vector<Configuration> traj;
    traj.reserve(steps + 1);
    Configuration c = c0;
    for (auto& v : c) v %= p;
    traj.push_back(c);

    if (const auto* s = std::get_if<Sfds>(&ss)) {
        std::vector<Rational> probs;
        for (const auto& mem : s->members) probs.push_back(mem.prob);
        for (std::uint64_t t = 0; t < steps; ++t) {
            SplitMix64 rng = step_stream(seed, t);
            const auto& mem = s->members[detail::draw_index(rng, probs)];
            c = step(mem.sys, mem.mode, c);
            traj.push_back(c);
        }
        return traj;
    }

    const auto& pf = std::get<Pfds>(ss);
    detail::pfds_check_word(pf);
    std::vector<std::vector<Rational>> probs(pf.n);
    for (int i = 0; i < pf.n; ++i)
        for (const auto& ch : pf.choices[i]) probs[i].push_back(ch.prob);
    for (std::uint64_t t = 0; t < steps; ++t) {
        SplitMix64 rng = step_stream(seed, t);
        if (pf.mode.is_parallel()) {
            Configuration next(pf.n);
            for (int i = 0; i < pf.n; ++i) {
                const auto& ch = pf.choices[i][detail::draw_index(rng, probs[i])];
                next[i] = ch.f.eval(c);
            }
            c = std::move(next);
        } else {
            for (int i : pf.mode.word.seq) {
                const auto& ch = pf.choices[i][detail::draw_index(rng, probs[i])];
                c[i] = ch.f.eval(c);
            }
        }
        traj.push_back(c);
    }
    return traj;
}

}  // namespace fdsys
