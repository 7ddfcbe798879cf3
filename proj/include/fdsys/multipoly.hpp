#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "fdsys/gf.hpp"

namespace fdsys {

using Configuration = std::vector<std::uint32_t>;

// Exponent tuple, one entry per variable, entries < p once reduced.
using Monomial = std::vector<std::uint8_t>;

struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = std::accumulate(a.begin(), a.end(), 0);
        int db = std::accumulate(b.begin(), b.end(), 0);
        if (da != db) return da < db;
        return a < b;
    }
};

// Reduced multivariate polynomial over GF(p) in n variables: every exponent
// is < p (x^p = x applied to a fixed point), no zero coefficients stored.
// Two reduced polynomials are equal iff they agree as functions GF(p)^n -> GF(p).
class MPoly {
  public:
    using TermMap = std::map<Monomial, std::uint32_t, GrlexLess>;

    MPoly(std::uint32_t p, int n) : p_(checked_prime(p)), n_(n) {}

    static MPoly zero(std::uint32_t p, int n) { return MPoly(p, n); }
    static MPoly constant(std::uint32_t p, int n, std::uint64_t c) {
        MPoly f(p, n);
        std::uint32_t v = static_cast<std::uint32_t>(c % p);
        if (v) f.t_.emplace(Monomial(n, 0), v);
        return f;
    }
    static MPoly var(std::uint32_t p, int n, int i) {
        if (i < 0 || i >= n) throw IndexOutOfRange("variable " + std::to_string(i));
        MPoly f(p, n);
        Monomial m(n, 0);
        m[i] = 1;
        f.t_.emplace(std::move(m), 1);
        return f;
    }

    // Fermat reduction of a raw exponent: x^e and x^(reduce(e)) agree on GF(p).
    static std::uint32_t reduce_exponent(std::uint64_t e, std::uint32_t p) {
        if (e < p) return static_cast<std::uint32_t>(e);
        return static_cast<std::uint32_t>((e - 1) % (p - 1) + 1);
    }

    // Canonicalize a term list with arbitrary exponents (the mp_reduce entry point).
    static MPoly from_raw_terms(
        std::uint32_t p, int n,
        const std::vector<std::pair<std::vector<std::uint64_t>, std::uint64_t>>& raw) {
        MPoly f(p, n);
        for (const auto& [exps, coeff] : raw) {
            if (static_cast<int>(exps.size()) != n)
                throw ArityMismatch("raw term has " + std::to_string(exps.size()) +
                                    " exponents, expected " + std::to_string(n));
            Monomial m(n);
            for (int i = 0; i < n; ++i)
                m[i] = static_cast<std::uint8_t>(reduce_exponent(exps[i], p));
            f.add_term(std::move(m), static_cast<std::uint32_t>(coeff % p));
        }
        return f;
    }

    std::uint32_t modulus() const { return p_; }
    int arity() const { return n_; }
    const TermMap& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const {
        return t_.empty() || (t_.size() == 1 && degree() == 0);
    }
    std::uint32_t constant_value() const {
        return t_.empty() ? 0 : t_.begin()->second;
    }
    int degree() const {
        int d = -1;
        for (const auto& [m, c] : t_)
            d = std::max(d, std::accumulate(m.begin(), m.end(), 0));
        return d;
    }

    bool operator==(const MPoly& o) const {
        return p_ == o.p_ && n_ == o.n_ && t_ == o.t_;
    }
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    MPoly operator+(const MPoly& o) const {
        check(o);
        MPoly r(*this);
        for (const auto& [m, c] : o.t_) r.add_term(Monomial(m), c);
        return r;
    }
    MPoly operator-(const MPoly& o) const {
        check(o);
        MPoly r(*this);
        for (const auto& [m, c] : o.t_) r.add_term(Monomial(m), neg_mod(c, p_));
        return r;
    }
    MPoly operator*(const MPoly& o) const {
        check(o);
        MPoly r(p_, n_);
        for (const auto& [ma, ca] : t_)
            for (const auto& [mb, cb] : o.t_) {
                Monomial m(n_);
                for (int i = 0; i < n_; ++i)
                    m[i] = static_cast<std::uint8_t>(
                        reduce_exponent(std::uint64_t(ma[i]) + mb[i], p_));
                r.add_term(std::move(m), mul_mod(ca, cb, p_));
            }
        return r;
    }
    MPoly scaled(std::uint32_t k) const {
        k %= p_;
        MPoly r(p_, n_);
        if (k == 0) return r;
        for (const auto& [m, c] : t_) r.t_.emplace(m, mul_mod(c, k, p_));
        return r;
    }
    MPoly pow(std::uint64_t e) const {
        MPoly r = constant(p_, n_, 1);
        MPoly b(*this);
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    std::uint32_t eval(const Configuration& point) const {
        if (static_cast<int>(point.size()) != n_)
            throw ArityMismatch("point has " + std::to_string(point.size()) +
                                " coordinates, expected " + std::to_string(n_));
        std::uint32_t acc = 0;
        for (const auto& [m, c] : t_) {
            std::uint32_t term = c;
            for (int i = 0; i < n_; ++i) {
                if (m[i] == 0) continue;
                term = mul_mod(term, pow_mod(point[i] % p_, m[i], p_), p_);
            }
            acc = add_mod(acc, term, p_);
        }
        return acc;
    }

    // Variables occurring in the canonical form. By uniqueness of the reduced
    // representation this is exactly semantic (essential) dependence.
    std::vector<int> support() const {
        std::set<int> s;
        for (const auto& [m, c] : t_)
            for (int i = 0; i < n_; ++i)
                if (m[i]) s.insert(i);
        return {s.begin(), s.end()};
    }

    // Degree <= 1 test plus coefficient extraction; used by the linear analyzer.
    bool is_affine() const {
        for (const auto& [m, c] : t_)
            if (std::accumulate(m.begin(), m.end(), 0) > 1) return false;
        return true;
    }
    std::uint32_t linear_coeff(int i) const {
        Monomial m(n_, 0);
        m[i] = 1;
        auto it = t_.find(m);
        return it == t_.end() ? 0 : it->second;
    }

    std::string to_string(const std::string& var_prefix = "x") const {
        if (t_.empty()) return "0";
        std::string s;
        for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
            const auto& [m, c] = *it;
            if (!s.empty()) s += " + ";
            bool has_var = false;
            std::string vars;
            for (int i = 0; i < n_; ++i) {
                if (m[i] == 0) continue;
                if (has_var) vars += "*";
                vars += var_prefix + std::to_string(i + 1);
                if (m[i] > 1) vars += "^" + std::to_string(int(m[i]));
                has_var = true;
            }
            if (!has_var)
                s += std::to_string(c);
            else if (c == 1)
                s += vars;
            else
                s += std::to_string(c) + "*" + vars;
        }
        return s;
    }

  private:
    void check(const MPoly& o) const {
        if (p_ != o.p_) throw ModulusMismatch(p_, o.p_);
        if (n_ != o.n_)
            throw ArityMismatch(std::to_string(n_) + " vs " + std::to_string(o.n_));
    }
    void add_term(Monomial m, std::uint32_t c) {
        if (c == 0) return;
        auto [it, fresh] = t_.emplace(std::move(m), c);
        if (!fresh) {
            it->second = add_mod(it->second, c, p_);
            if (it->second == 0) t_.erase(it);
        }
    }

    std::uint32_t p_;
    int n_;
    TermMap t_;
};

// Configuration index encoding, little-endian lexicographic: coordinate 0
// varies fastest. Fixed so tables, cycle lists and Markov rows are
// reproducible bit-for-bit.
inline std::uint64_t encode_config(const Configuration& c, std::uint32_t p) {
    std::uint64_t idx = 0;
    for (std::size_t i = c.size(); i-- > 0;) idx = idx * p + (c[i] % p);
    return idx;
}

inline Configuration decode_config(std::uint64_t idx, std::uint32_t p, int n) {
    Configuration c(n);
    for (int i = 0; i < n; ++i) {
        c[i] = static_cast<std::uint32_t>(idx % p);
        idx /= p;
    }
    return c;
}

// p^n if it fits both uint64 and the budget; throws BudgetExceeded otherwise.
inline std::uint64_t checked_state_count(std::uint32_t p, int n, std::uint64_t budget) {
    std::uint64_t count = 1;
    for (int i = 0; i < n; ++i) {
        if (count > budget / p) throw BudgetExceeded(budget + 1, budget);
        count *= p;
    }
    if (count > budget) throw BudgetExceeded(count, budget);
    return count;
}

// The interpolation formula, applied term for term:
//   g(x) = sum over c in GF(p)^n of g(c) * prod_i (1 - (x_i - c_i)^(p-1)).
// The table is indexed by encode_config and must be total. Since every factor
// keeps each exponent below p, a reduced polynomial is a dense array over
// exponent tuples; the product is accumulated in that array form and
// converted to the canonical term map at the end.
inline MPoly mp_interpolate(std::uint32_t p, int n,
                            const std::vector<std::uint32_t>& table) {
    checked_prime(p);
    std::uint64_t want = 1;
    for (int i = 0; i < n; ++i) want *= p;
    if (table.size() != want) throw IncompleteTable(table.size(), want);

    std::vector<std::uint32_t> acc(want, 0);  // coefficient at exponent tuple
    std::vector<std::uint32_t> prod, next;
    prod.reserve(want);
    next.reserve(want);
    for (std::uint64_t idx = 0; idx < want; ++idx) {
        std::uint32_t g = table[idx] % p;
        if (g == 0) continue;
        Configuration c = decode_config(idx, p, n);
        prod.assign(1, g);
        std::uint64_t width = 1;
        for (int i = 0; i < n; ++i) {
            // coefficients of 1 - (x_i - c_i)^(p-1) in x_i
            std::vector<std::uint32_t> factor(p, 0);
            factor[0] = 1;
            std::vector<std::uint32_t> binom_pow(1, 1);  // (x - c_i)^k
            for (std::uint32_t k = 0; k < p - 1; ++k) {
                std::vector<std::uint32_t> nx(binom_pow.size() + 1, 0);
                for (std::size_t d = 0; d < binom_pow.size(); ++d) {
                    nx[d + 1] = add_mod(nx[d + 1], binom_pow[d], p);
                    nx[d] = add_mod(nx[d], mul_mod(binom_pow[d], neg_mod(c[i], p), p), p);
                }
                binom_pow = std::move(nx);
            }
            for (std::uint32_t e = 0; e < p; ++e)
                factor[e] = sub_mod(factor[e], binom_pow[e], p);
            next.assign(width * p, 0);
            for (std::uint64_t k = 0; k < width; ++k) {
                if (prod[k] == 0) continue;
                for (std::uint32_t e = 0; e < p; ++e) {
                    if (factor[e] == 0) continue;
                    std::uint64_t slot = k + width * e;
                    next[slot] = add_mod(next[slot], mul_mod(prod[k], factor[e], p), p);
                }
            }
            prod = next;
            width *= p;
        }
        for (std::uint64_t k = 0; k < want; ++k)
            acc[k] = add_mod(acc[k], prod[k], p);
    }

    std::vector<std::pair<std::vector<std::uint64_t>, std::uint64_t>> raw;
    for (std::uint64_t k = 0; k < want; ++k) {
        if (acc[k] == 0) continue;
        std::vector<std::uint64_t> exps(n);
        std::uint64_t rem = k;
        for (int i = 0; i < n; ++i) {
            exps[i] = rem % p;
            rem /= p;
        }
        raw.emplace_back(std::move(exps), acc[k]);
    }
    return MPoly::from_raw_terms(p, n, raw);
}

// Boolean expression tree for GF(2) conversion.
struct BoolExpr {
    enum class Kind { Var, Const, Not, And, Or, Xor };
    Kind kind;
    int var = -1;     // Kind::Var, 0-based
    bool value = false;  // Kind::Const
    std::shared_ptr<const BoolExpr> a, b;

    static std::shared_ptr<const BoolExpr> make_var(int i) {
        auto e = std::make_shared<BoolExpr>();
        e->kind = Kind::Var;
        e->var = i;
        return e;
    }
    static std::shared_ptr<const BoolExpr> make_const(bool v) {
        auto e = std::make_shared<BoolExpr>();
        e->kind = Kind::Const;
        e->value = v;
        return e;
    }
    static std::shared_ptr<const BoolExpr> make_not(std::shared_ptr<const BoolExpr> x) {
        auto e = std::make_shared<BoolExpr>();
        e->kind = Kind::Not;
        e->a = std::move(x);
        return e;
    }
    static std::shared_ptr<const BoolExpr> make_bin(Kind k,
                                                    std::shared_ptr<const BoolExpr> l,
                                                    std::shared_ptr<const BoolExpr> r) {
        auto e = std::make_shared<BoolExpr>();
        e->kind = k;
        e->a = std::move(l);
        e->b = std::move(r);
        return e;
    }
};

using BoolExprPtr = std::shared_ptr<const BoolExpr>;

inline bool eval_bool(const BoolExpr& e, const std::vector<bool>& point) {
    switch (e.kind) {
        case BoolExpr::Kind::Var: return point.at(e.var);
        case BoolExpr::Kind::Const: return e.value;
        case BoolExpr::Kind::Not: return !eval_bool(*e.a, point);
        case BoolExpr::Kind::And: return eval_bool(*e.a, point) && eval_bool(*e.b, point);
        case BoolExpr::Kind::Or: return eval_bool(*e.a, point) || eval_bool(*e.b, point);
        case BoolExpr::Kind::Xor: return eval_bool(*e.a, point) != eval_bool(*e.b, point);
    }
    return false;
}

// AND -> product, XOR -> sum, NOT x -> x + 1, OR -> x + y + xy, over GF(2).
inline MPoly bool_to_poly(const BoolExpr& e, int n, std::uint32_t p = 2) {
    if (p != 2)
        throw WrongCharacteristic("boolean conversion requires GF(2), got p = " +
                                  std::to_string(p));
    switch (e.kind) {
        case BoolExpr::Kind::Var: return MPoly::var(2, n, e.var);
        case BoolExpr::Kind::Const: return MPoly::constant(2, n, e.value ? 1 : 0);
        case BoolExpr::Kind::Not:
            return bool_to_poly(*e.a, n) + MPoly::constant(2, n, 1);
        case BoolExpr::Kind::And: return bool_to_poly(*e.a, n) * bool_to_poly(*e.b, n);
        case BoolExpr::Kind::Xor: return bool_to_poly(*e.a, n) + bool_to_poly(*e.b, n);
        case BoolExpr::Kind::Or: {
            MPoly x = bool_to_poly(*e.a, n);
            MPoly y = bool_to_poly(*e.b, n);
            return x + y + x * y;
        }
    }
    return MPoly::zero(2, n);
}

}  // namespace fdsys
