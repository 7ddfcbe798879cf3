#pragma once

#include <cstdint>

#include "fdsys/errors.hpp"

namespace fdsys {

inline bool is_prime(std::uint64_t m) {
    if (m < 2) return false;
    if (m % 2 == 0) return m == 2;
    for (std::uint64_t d = 3; d * d <= m; d += 2)
        if (m % d == 0) return false;
    return true;
}

inline std::uint32_t checked_prime(std::uint32_t p) {
    thread_local std::uint32_t last_ok = 0;
    if (p != last_ok) {
        if (!is_prime(p)) throw InvalidModulus(p);
        last_ok = p;
    }
    return p;
}

// Raw residue arithmetic. Callers guarantee inputs are already in [0, p).
inline std::uint32_t add_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    std::uint32_t s = a + b;
    return s >= p ? s - p : s;
}

inline std::uint32_t sub_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return a >= b ? a - b : a + p - b;
}

inline std::uint32_t neg_mod(std::uint32_t a, std::uint32_t p) { return a == 0 ? 0 : p - a; }

inline std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return static_cast<std::uint32_t>(std::uint64_t(a) * b % p);
}

inline std::uint32_t pow_mod(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
    std::uint32_t r = 1 % p;
    while (e) {
        if (e & 1) r = mul_mod(r, a, p);
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    return r;
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    if (a == 0) throw DivisionByZero();
    return pow_mod(a, p - 2, p);  // Fermat, p prime
}

// A residue mod a prime p. Every value carries its modulus; mixing moduli throws.
class FieldElement {
  public:
    FieldElement(std::uint64_t value, std::uint32_t p)
        : p_(checked_prime(p)), v_(static_cast<std::uint32_t>(value % p)) {}

    std::uint32_t value() const { return v_; }
    std::uint32_t modulus() const { return p_; }

    FieldElement operator+(const FieldElement& o) const {
        return raw(add_mod(v_, check(o), p_), p_);
    }
    FieldElement operator-(const FieldElement& o) const {
        return raw(sub_mod(v_, check(o), p_), p_);
    }
    FieldElement operator*(const FieldElement& o) const {
        return raw(mul_mod(v_, check(o), p_), p_);
    }
    FieldElement operator/(const FieldElement& o) const {
        return raw(mul_mod(v_, inv_mod(check(o), p_), p_), p_);
    }
    FieldElement operator-() const { return raw(neg_mod(v_, p_), p_); }

    FieldElement inverse() const { return raw(inv_mod(v_, p_), p_); }
    FieldElement pow(std::uint64_t e) const { return raw(pow_mod(v_, e, p_), p_); }

    bool operator==(const FieldElement& o) const { return p_ == o.p_ && v_ == o.v_; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

  private:
    static FieldElement raw(std::uint32_t v, std::uint32_t p) {
        FieldElement e;
        e.v_ = v;
        e.p_ = p;
        return e;
    }
    FieldElement() : p_(2), v_(0) {}
    std::uint32_t check(const FieldElement& o) const {
        if (p_ != o.p_) throw ModulusMismatch(p_, o.p_);
        return o.v_;
    }

    std::uint32_t p_;
    std::uint32_t v_;
};

}  // namespace fdsys
