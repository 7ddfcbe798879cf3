#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fdsys/multipoly.hpp"

namespace fdsys {

constexpr std::uint64_t kDefaultBudget = std::uint64_t(1) << 20;

// Update schedule: a nonempty word over the variable indices (0-based).
// A permutation is the special case where every index appears exactly once.
struct UpdateWord {
    std::vector<int> seq;

    bool is_permutation(int n) const {
        if (static_cast<int>(seq.size()) != n) return false;
        std::vector<bool> seen(n, false);
        for (int i : seq) {
            if (i < 0 || i >= n || seen[i]) return false;
            seen[i] = true;
        }
        return true;
    }
};

struct Mode {
    enum class Kind { Parallel, Word };
    Kind kind = Kind::Parallel;
    UpdateWord word;

    static Mode parallel() { return Mode{}; }
    static Mode with_word(UpdateWord w) {
        Mode m;
        m.kind = Kind::Word;
        m.word = std::move(w);
        return m;
    }
    bool is_parallel() const { return kind == Kind::Parallel; }

    std::string to_string() const {
        if (is_parallel()) return "parallel";
        std::string s = "word (";
        for (std::size_t i = 0; i < word.seq.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(word.seq[i] + 1);
        }
        return s + ")";
    }
};

// n local functions over GF(p) plus the dependency graph they induce:
// edge i -> j iff x_i occurs in the reduced form of f_j.
struct System {
    std::uint32_t p = 2;
    int n = 0;
    std::vector<MPoly> locals;
    std::vector<std::vector<int>> dep_out;  // dep_out[i] = { j : edge i -> j }, sorted
    bool symmetric = false;                 // between distinct vertices

    bool has_edge(int i, int j) const {
        const auto& row = dep_out[i];
        return std::binary_search(row.begin(), row.end(), j);
    }
};

inline System build_system(std::uint32_t p, std::vector<MPoly> locals) {
    checked_prime(p);
    if (locals.empty()) throw ArityMismatch("no local functions");
    int n = static_cast<int>(locals.size());
    for (const auto& f : locals) {
        if (f.modulus() != p) throw ModulusMismatch(p, f.modulus());
        if (f.arity() != n)
            throw ArityMismatch("local has arity " + std::to_string(f.arity()) +
                                ", system has " + std::to_string(n) + " variables");
    }
    System s;
    s.p = p;
    s.n = n;
    s.locals = std::move(locals);
    s.dep_out.assign(n, {});
    for (int j = 0; j < n; ++j)
        for (int i : s.locals[j].support()) s.dep_out[i].push_back(j);
    for (auto& row : s.dep_out) std::sort(row.begin(), row.end());
    s.symmetric = true;
    for (int i = 0; i < n && s.symmetric; ++i)
        for (int j : s.dep_out[i])
            if (i != j && !s.has_edge(j, i)) {
                s.symmetric = false;
                break;
            }
    return s;
}

inline void check_config(const System& s, const Configuration& c) {
    if (static_cast<int>(c.size()) != s.n)
        throw ArityMismatch("configuration has " + std::to_string(c.size()) +
                            " coordinates, expected " + std::to_string(s.n));
}

inline Configuration step_parallel(const System& s, const Configuration& c) {
    check_config(s, c);
    Configuration next(s.n);
    for (int i = 0; i < s.n; ++i) next[i] = s.locals[i].eval(c);
    return next;
}

// Sequential update: each entry of the word rewrites only its own coordinate,
// in word order, seeing all earlier rewrites.
inline Configuration step_word(const System& s, const UpdateWord& w, Configuration c) {
    check_config(s, c);
    if (w.seq.empty()) throw IndexOutOfRange("empty update word");
    for (int i : w.seq) {
        if (i < 0 || i >= s.n)
            throw IndexOutOfRange("word entry " + std::to_string(i + 1) + " of " +
                                  std::to_string(s.n) + " variables");
        c[i] = s.locals[i].eval(c);
    }
    return c;
}

inline Configuration step(const System& s, const Mode& m, const Configuration& c) {
    return m.is_parallel() ? step_parallel(s, c) : step_word(s, m.word, c);
}

inline std::uint64_t state_count(const System& s, std::uint64_t budget = kDefaultBudget) {
    return checked_state_count(s.p, s.n, budget);
}

// Total lookup table of the global map on all p^n configurations.
inline std::vector<std::uint64_t> materialize_global(
    const System& s, const Mode& m, std::uint64_t budget = kDefaultBudget) {
    std::uint64_t count = state_count(s, budget);
    std::vector<std::uint64_t> table(count);
    for (std::uint64_t idx = 0; idx < count; ++idx)
        table[idx] = encode_config(step(s, m, decode_config(idx, s.p, s.n)), s.p);
    return table;
}

inline std::string config_to_string(const Configuration& c, std::uint32_t p) {
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (p > 10 && i) s += ",";
        s += std::to_string(c[i]);
    }
    return s;
}

}  // namespace fdsys
