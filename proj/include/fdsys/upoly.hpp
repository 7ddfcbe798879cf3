#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fdsys/gf.hpp"

namespace fdsys {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_pow(std::uint64_t base, std::uint64_t e) {
    BigInt r = 1;
    BigInt b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// Trial division. Fine at the scale this library targets; factoring p^d - 1 is
// the known cost hot spot of order computations.
inline std::vector<std::pair<BigInt, int>> factor_integer(BigInt n) {
    std::vector<std::pair<BigInt, int>> out;
    if (n < 2) return out;
    auto strip = [&](const BigInt& q) {
        int m = 0;
        while (n % q == 0) {
            n /= q;
            ++m;
        }
        if (m) out.emplace_back(q, m);
    };
    strip(2);
    for (BigInt d = 3; d * d <= n; d += 2) strip(d);
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline std::vector<BigInt> divisors_of(const BigInt& n) {
    std::vector<BigInt> divs{1};
    for (const auto& [q, m] : factor_integer(n)) {
        std::size_t sz = divs.size();
        BigInt qe = 1;
        for (int e = 1; e <= m; ++e) {
            qe *= q;
            for (std::size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * qe);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

// Univariate polynomial over GF(p), coefficients lowest degree first.
// Canonical: no trailing zero coefficients; the zero polynomial is empty.
class UPoly {
  public:
    explicit UPoly(std::uint32_t p) : p_(checked_prime(p)) {}
    UPoly(std::uint32_t p, std::vector<std::uint32_t> coeffs) : p_(checked_prime(p)) {
        c_ = std::move(coeffs);
        for (auto& v : c_) v %= p_;
        trim();
    }

    static UPoly zero(std::uint32_t p) { return UPoly(p); }
    static UPoly one(std::uint32_t p) { return UPoly(p, {1}); }
    static UPoly x(std::uint32_t p) { return UPoly(p, {0, 1}); }
    static UPoly constant(std::uint32_t p, std::uint32_t c) { return UPoly(p, {c}); }

    std::uint32_t modulus() const { return p_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const std::vector<std::uint32_t>& coeffs() const { return c_; }
    std::uint32_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    std::uint32_t leading() const { return c_.empty() ? 0 : c_.back(); }

    bool operator==(const UPoly& o) const { return p_ == o.p_ && c_ == o.c_; }
    bool operator!=(const UPoly& o) const { return !(*this == o); }

    UPoly operator+(const UPoly& o) const {
        check(o);
        std::vector<std::uint32_t> r(std::max(c_.size(), o.c_.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] = add_mod(coeff(i), o.coeff(i), p_);
        return UPoly(p_, std::move(r));
    }
    UPoly operator-(const UPoly& o) const {
        check(o);
        std::vector<std::uint32_t> r(std::max(c_.size(), o.c_.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] = sub_mod(coeff(i), o.coeff(i), p_);
        return UPoly(p_, std::move(r));
    }
    UPoly operator*(const UPoly& o) const {
        check(o);
        if (is_zero() || o.is_zero()) return zero(p_);
        std::vector<std::uint32_t> r(c_.size() + o.c_.size() - 1, 0);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j)
                r[i + j] = add_mod(r[i + j], mul_mod(c_[i], o.c_[j], p_), p_);
        }
        return UPoly(p_, std::move(r));
    }
    UPoly scaled(std::uint32_t k) const {
        std::vector<std::uint32_t> r(c_);
        for (auto& v : r) v = mul_mod(v, k % p_, p_);
        return UPoly(p_, std::move(r));
    }

    // a = q*b + r with deg r < deg b.
    std::pair<UPoly, UPoly> divmod(const UPoly& b) const {
        check(b);
        if (b.is_zero()) throw DivisionByZero();
        if (degree() < b.degree()) return {zero(p_), *this};
        std::vector<std::uint32_t> rem(c_);
        std::vector<std::uint32_t> quo(c_.size() - b.c_.size() + 1, 0);
        std::uint32_t inv_lead = inv_mod(b.leading(), p_);
        for (int i = degree(); i >= b.degree(); --i) {
            std::uint32_t f = mul_mod(rem[i], inv_lead, p_);
            if (f == 0) continue;
            quo[i - b.degree()] = f;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                std::size_t k = i - b.degree() + j;
                rem[k] = sub_mod(rem[k], mul_mod(f, b.c_[j], p_), p_);
            }
        }
        return {UPoly(p_, std::move(quo)), UPoly(p_, std::move(rem))};
    }
    UPoly operator/(const UPoly& b) const { return divmod(b).first; }
    UPoly operator%(const UPoly& b) const { return divmod(b).second; }

    UPoly monic() const {
        if (is_zero() || leading() == 1) return *this;
        return scaled(inv_mod(leading(), p_));
    }

    UPoly derivative() const {
        if (c_.size() <= 1) return zero(p_);
        std::vector<std::uint32_t> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            r[i - 1] = mul_mod(c_[i], static_cast<std::uint32_t>(i % p_), p_);
        return UPoly(p_, std::move(r));
    }

    std::uint32_t eval(std::uint32_t at) const {
        std::uint32_t acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;)
            acc = add_mod(mul_mod(acc, at % p_, p_), c_[i], p_);
        return acc;
    }

    // Canonical comparison: degree, then coefficient sequence (constant term first).
    bool operator<(const UPoly& o) const {
        if (degree() != o.degree()) return degree() < o.degree();
        return c_ < o.c_;
    }

    std::string to_string(const std::string& var = "x") const;

  private:
    void check(const UPoly& o) const {
        if (p_ != o.p_) throw ModulusMismatch(p_, o.p_);
    }
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::uint32_t p_;
    std::vector<std::uint32_t> c_;
};

inline UPoly upoly_gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
        UPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

inline UPoly upoly_powmod(UPoly base, BigInt e, const UPoly& mod) {
    UPoly r = UPoly::one(base.modulus()) % mod;
    base = base % mod;
    while (e > 0) {
        if (boost::multiprecision::bit_test(e, 0)) r = (r * base) % mod;
        base = (base * base) % mod;
        e >>= 1;
    }
    return r;
}

namespace detail {

// f with f' = 0 is a p-th power: f(x) = h(x)^p = h(x^p) over GF(p).
inline UPoly pth_root(const UPoly& f) {
    std::uint32_t p = f.modulus();
    std::vector<std::uint32_t> r(f.degree() / p + 1, 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.coeff(i * p);
    return UPoly(p, std::move(r));
}

// f = prod g_i^i with the g_i squarefree and pairwise coprime; f monic, deg >= 1.
inline void squarefree_decompose(const UPoly& f,
                                 std::map<int, UPoly>& out,
                                 int mult_scale) {
    std::uint32_t p = f.modulus();
    UPoly df = f.derivative();
    UPoly c = df.is_zero() ? f : upoly_gcd(f, df);
    if (!df.is_zero()) {
        UPoly w = (f / c).monic();
        int i = 1;
        while (w.degree() > 0) {
            UPoly y = upoly_gcd(w, c);
            UPoly part = (w / y).monic();
            if (part.degree() > 0) {
                auto [it, fresh] = out.emplace(i * mult_scale, part);
                if (!fresh) it->second = (it->second * part).monic();
            }
            w = std::move(y);
            c = (c / w).monic();
            ++i;
        }
    }
    // Everything left in c has multiplicity divisible by p.
    if (c.degree() > 0) squarefree_decompose(pth_root(c).monic(), out, mult_scale * p);
}

// g squarefree monic: split into (product of irreducibles of degree d, d) parts.
inline std::vector<std::pair<UPoly, int>> distinct_degree_split(UPoly g) {
    std::uint32_t p = g.modulus();
    std::vector<std::pair<UPoly, int>> out;
    UPoly h = UPoly::x(p) % g;
    int d = 0;
    while (g.degree() >= 2 * (d + 1)) {
        ++d;
        h = upoly_powmod(h, p, g);  // h = x^(p^d) mod g
        UPoly gd = upoly_gcd(h - (UPoly::x(p) % g), g);
        if (gd.degree() > 0) {
            out.emplace_back(gd, d);
            g = (g / gd).monic();
            h = h % g;
        }
    }
    if (g.degree() > 0) out.emplace_back(g, g.degree());
    return out;
}

// Cantor-Zassenhaus equal-degree splitting: f is a monic squarefree product of
// irreducibles all of degree d. Seeded rng keeps runs reproducible; the final
// factor list is sorted anyway.
inline void equal_degree_split(const UPoly& f, int d, std::mt19937_64& rng,
                               std::vector<UPoly>& out) {
    std::uint32_t p = f.modulus();
    if (f.degree() == d) {
        out.push_back(f);
        return;
    }
    for (;;) {
        std::vector<std::uint32_t> rc(f.degree());
        for (auto& v : rc) v = static_cast<std::uint32_t>(rng() % p);
        UPoly a(p, std::move(rc));
        if (a.degree() < 1) continue;
        UPoly t = upoly_gcd(a, f);
        if (t.degree() == 0) {
            if (p == 2) {
                // Trace map T(a) = a + a^2 + ... + a^(2^(d-1)) lands in GF(2).
                UPoly tr = a % f;
                UPoly pw = a % f;
                for (int i = 1; i < d; ++i) {
                    pw = (pw * pw) % f;
                    tr = tr + pw;
                }
                t = upoly_gcd(tr, f);
            } else {
                BigInt e = (big_pow(p, d) - 1) / 2;
                UPoly b = upoly_powmod(a, e, f);
                t = upoly_gcd(b - UPoly::one(p), f);
            }
        }
        if (t.degree() > 0 && t.degree() < f.degree()) {
            equal_degree_split(t, d, rng, out);
            equal_degree_split((f / t).monic(), d, rng, out);
            return;
        }
    }
}

}  // namespace detail

// Full factorization of a nonzero polynomial into monic irreducibles.
// Non-monic input is normalized and the unit factor discarded. Factors are
// sorted canonically (degree, then coefficient sequence).
inline std::vector<std::pair<UPoly, int>> upoly_factor(const UPoly& a) {
    if (a.is_zero()) throw ZeroPolynomial();
    UPoly f = a.monic();
    std::vector<std::pair<UPoly, int>> result;
    if (f.degree() < 1) return result;
    std::map<int, UPoly> sqfree;
    detail::squarefree_decompose(f, sqfree, 1);
    std::mt19937_64 rng(0x5eedf0d5u);
    for (const auto& [mult, part] : sqfree) {
        for (const auto& [prod, d] : detail::distinct_degree_split(part)) {
            std::vector<UPoly> irreducibles;
            detail::equal_degree_split(prod, d, rng, irreducibles);
            for (auto& g : irreducibles) result.emplace_back(std::move(g), mult);
        }
    }
    std::sort(result.begin(), result.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    return result;
}

inline bool upoly_irreducible(const UPoly& a) {
    if (a.degree() < 1) return false;
    auto fs = upoly_factor(a);
    return fs.size() == 1 && fs[0].second == 1;
}

// Least s >= 1 with a | x^s - 1, computed from the orders of the irreducible
// factors: an irreducible of degree d has order dividing p^d - 1, and a factor
// of multiplicity m contributes an extra p^ceil(log_p m).
inline BigInt upoly_order(const UPoly& a) {
    if (a.is_zero() || a.degree() < 1) throw ConstantPolynomial();
    if (a.coeff(0) == 0) throw NotCoprimeToX();
    std::uint32_t p = a.modulus();
    BigInt total = 1;
    for (const auto& [g, mult] : upoly_factor(a)) {
        BigInt e = big_pow(p, g.degree()) - 1;
        BigInt ord = e;
        for (const auto& [q, unused] : factor_integer(e)) {
            while (ord % q == 0 &&
                   upoly_powmod(UPoly::x(p), ord / q, g) == UPoly::one(p) % g)
                ord /= q;
        }
        BigInt wild = 1;
        while (wild < mult) wild *= p;  // p^ceil(log_p mult)
        ord *= wild;
        total = boost::multiprecision::lcm(total, ord);
    }
    return total;
}

inline std::string UPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        if (!s.empty()) s += " + ";
        if (i == 0) {
            s += std::to_string(c_[i]);
        } else {
            if (c_[i] != 1) s += std::to_string(c_[i]) + "*";
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

}  // namespace fdsys
