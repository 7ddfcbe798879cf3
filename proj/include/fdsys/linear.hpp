#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fdsys/phase.hpp"
#include "fdsys/upoly.hpp"

namespace fdsys {

class MatrixGF {
  public:
    MatrixGF(std::uint32_t p, int rows, int cols)
        : p_(checked_prime(p)), rows_(rows), cols_(cols), a_(std::size_t(rows) * cols, 0) {}

    static MatrixGF identity(std::uint32_t p, int n) {
        MatrixGF m(p, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    std::uint32_t modulus() const { return p_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::uint32_t& at(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
    std::uint32_t at(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }

    bool operator==(const MatrixGF& o) const {
        return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    bool is_zero() const {
        for (auto v : a_)
            if (v) return false;
        return true;
    }

    MatrixGF operator+(const MatrixGF& o) const {
        check_same_shape(o);
        MatrixGF r(*this);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = add_mod(a_[k], o.a_[k], p_);
        return r;
    }
    MatrixGF operator-(const MatrixGF& o) const {
        check_same_shape(o);
        MatrixGF r(*this);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = sub_mod(a_[k], o.a_[k], p_);
        return r;
    }
    MatrixGF operator*(const MatrixGF& o) const {
        if (p_ != o.p_) throw ModulusMismatch(p_, o.p_);
        if (cols_ != o.rows_)
            throw DimensionMismatch(std::to_string(cols_) + " vs " + std::to_string(o.rows_));
        MatrixGF r(p_, rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                std::uint32_t v = at(i, k);
                if (!v) continue;
                for (int j = 0; j < o.cols_; ++j)
                    r.at(i, j) = add_mod(r.at(i, j), mul_mod(v, o.at(k, j), p_), p_);
            }
        return r;
    }

    MatrixGF pow(BigInt e) const {
        require_square();
        MatrixGF r = identity(p_, rows_);
        MatrixGF b(*this);
        while (e > 0) {
            if (boost::multiprecision::bit_test(e, 0)) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    std::vector<std::uint32_t> apply(const std::vector<std::uint32_t>& v) const {
        if (static_cast<int>(v.size()) != cols_)
            throw DimensionMismatch("vector size " + std::to_string(v.size()));
        std::vector<std::uint32_t> r(rows_, 0);
        for (int i = 0; i < rows_; ++i) {
            std::uint64_t acc = 0;
            for (int j = 0; j < cols_; ++j) acc += std::uint64_t(at(i, j)) * v[j];
            r[i] = static_cast<std::uint32_t>(acc % p_);
        }
        return r;
    }

    void require_square() const {
        if (rows_ != cols_)
            throw DimensionMismatch("matrix is " + std::to_string(rows_) + "x" +
                                    std::to_string(cols_) + ", need square");
    }

  private:
    void check_same_shape(const MatrixGF& o) const {
        if (p_ != o.p_) throw ModulusMismatch(p_, o.p_);
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw DimensionMismatch("shape mismatch");
    }

    std::uint32_t p_;
    int rows_, cols_;
    std::vector<std::uint32_t> a_;
};

// Row echelon reduction; returns pivot columns. Operates in place.
inline std::vector<int> row_reduce(MatrixGF& m) {
    std::uint32_t p = m.modulus();
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int sel = -1;
        for (int i = row; i < m.rows(); ++i)
            if (m.at(i, col)) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        if (sel != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(row, j));
        std::uint32_t inv = inv_mod(m.at(row, col), p);
        for (int j = 0; j < m.cols(); ++j) m.at(row, j) = mul_mod(m.at(row, j), inv, p);
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || m.at(i, col) == 0) continue;
            std::uint32_t f = m.at(i, col);
            for (int j = 0; j < m.cols(); ++j)
                m.at(i, j) = sub_mod(m.at(i, j), mul_mod(f, m.at(row, j), p), p);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline int rank(MatrixGF m) { return static_cast<int>(row_reduce(m).size()); }

inline int kernel_dim(const MatrixGF& m) { return m.cols() - rank(m); }

// Basis of the null space, one vector per free column.
inline std::vector<std::vector<std::uint32_t>> kernel_basis(MatrixGF m) {
    std::uint32_t p = m.modulus();
    std::vector<int> pivots = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<std::uint32_t>> basis;
    for (int free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<std::uint32_t> v(m.cols(), 0);
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = neg_mod(m.at(static_cast<int>(r), free), p);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Basis of the column space, as column vectors.
inline std::vector<std::vector<std::uint32_t>> image_basis(const MatrixGF& m) {
    MatrixGF red = m;
    std::vector<int> pivots = row_reduce(red);
    std::vector<std::vector<std::uint32_t>> basis;
    for (int c : pivots) {
        std::vector<std::uint32_t> v(m.rows());
        for (int i = 0; i < m.rows(); ++i) v[i] = m.at(i, c);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline MatrixGF inverse(const MatrixGF& m) {
    m.require_square();
    int n = m.rows();
    MatrixGF aug(m.modulus(), n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    if (static_cast<int>(row_reduce(aug).size()) != n)
        throw DivisionByZero();
    MatrixGF inv(m.modulus(), n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

// Extracts (A, b) with f_i = sum_j a_ij x_j + b_i when every local has degree
// <= 1; nullopt otherwise. b = 0 identifies the strictly linear case.
inline std::optional<std::pair<MatrixGF, std::vector<std::uint32_t>>> as_linear(
    const System& s) {
    MatrixGF a(s.p, s.n, s.n);
    std::vector<std::uint32_t> b(s.n, 0);
    for (int i = 0; i < s.n; ++i) {
        const MPoly& f = s.locals[i];
        if (!f.is_affine()) return std::nullopt;
        for (int j = 0; j < s.n; ++j) a.at(i, j) = f.linear_coeff(j);
        Monomial zero_m(s.n, 0);
        auto it = f.terms().find(zero_m);
        b[i] = it == f.terms().end() ? 0 : it->second;
    }
    return std::make_pair(std::move(a), std::move(b));
}

inline bool is_zero_vector(const std::vector<std::uint32_t>& v) {
    return std::all_of(v.begin(), v.end(), [](std::uint32_t x) { return x == 0; });
}

// The affine map x -> Ax + b as an (n+1)-square matrix [[A, b], [0, 1]];
// iterating it on the slice with last coordinate 1 reproduces the affine
// dynamics, reducing the problem to the linear case.
inline MatrixGF affine_embed(const MatrixGF& a, const std::vector<std::uint32_t>& b) {
    a.require_square();
    if (static_cast<int>(b.size()) != a.rows())
        throw DimensionMismatch("offset vector size " + std::to_string(b.size()));
    int n = a.rows();
    MatrixGF e(a.modulus(), n + 1, n + 1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) e.at(i, j) = a.at(i, j);
        e.at(i, n) = b[i] % a.modulus();
    }
    e.at(n, n) = 1;
    return e;
}

// Monic polynomial of least degree with mu(A) = 0, found from the first
// linear dependency among I, A, A^2, ... The elimination keeps stored rows
// mutually reduced (each is zero at every other row's lead column), so a
// single reduction pass decides membership.
inline UPoly min_poly(const MatrixGF& a) {
    a.require_square();
    std::uint32_t p = a.modulus();
    int n = a.rows();
    int dim = n * n;
    std::vector<std::vector<std::uint32_t>> reduced;  // length dim, RREF rows
    std::vector<std::vector<std::uint32_t>> combos;   // coefficients over powers
    std::vector<int> lead_col;
    MatrixGF pw = MatrixGF::identity(p, n);
    for (int k = 0;; ++k) {
        std::vector<std::uint32_t> vec(dim);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) vec[i * n + j] = pw.at(i, j);
        std::vector<std::uint32_t> combo(k + 1, 0);
        combo[k] = 1;
        for (std::size_t r = 0; r < reduced.size(); ++r) {
            std::uint32_t f = vec[lead_col[r]];
            if (!f) continue;
            for (int c = 0; c < dim; ++c)
                vec[c] = sub_mod(vec[c], mul_mod(f, reduced[r][c], p), p);
            for (std::size_t c = 0; c < combos[r].size(); ++c)
                combo[c] = sub_mod(combo[c], mul_mod(f, combos[r][c], p), p);
        }
        int lead = -1;
        for (int c = 0; c < dim; ++c)
            if (vec[c]) {
                lead = c;
                break;
            }
        if (lead < 0) return UPoly(p, combo).monic();
        std::uint32_t inv = inv_mod(vec[lead], p);
        for (auto& v : vec) v = mul_mod(v, inv, p);
        for (auto& v : combo) v = mul_mod(v, inv, p);
        for (std::size_t r = 0; r < reduced.size(); ++r) {
            std::uint32_t f = reduced[r][lead];
            if (!f) continue;
            for (int c = 0; c < dim; ++c)
                reduced[r][c] = sub_mod(reduced[r][c], mul_mod(f, vec[c], p), p);
            combos[r].resize(std::max(combos[r].size(), combo.size()), 0);
            for (std::size_t c = 0; c < combo.size(); ++c)
                combos[r][c] = sub_mod(combos[r][c], mul_mod(f, combo[c], p), p);
        }
        reduced.push_back(std::move(vec));
        combos.push_back(std::move(combo));
        lead_col.push_back(lead);
        pw = pw * a;
    }
}

// Fitting decomposition: k^m = ker(A^m) + im(A^m), both A-invariant; A acts
// invertibly on the image part and nilpotently on the kernel part.
struct FittingDecomposition {
    int inv_dim = 0;
    int nil_dim = 0;
    MatrixGF invertible_part;  // inv_dim x inv_dim
    MatrixGF nilpotent_part;   // nil_dim x nil_dim
    MatrixGF basis;            // columns: image basis then kernel basis
};

inline FittingDecomposition fitting_decomposition(const MatrixGF& a) {
    a.require_square();
    std::uint32_t p = a.modulus();
    int m = a.rows();
    MatrixGF am = a.pow(m);
    auto img = image_basis(am);
    auto ker = kernel_basis(am);
    int r = static_cast<int>(img.size());
    int t = static_cast<int>(ker.size());
    MatrixGF basis(p, m, m);
    for (int j = 0; j < r; ++j)
        for (int i = 0; i < m; ++i) basis.at(i, j) = img[j][i];
    for (int j = 0; j < t; ++j)
        for (int i = 0; i < m; ++i) basis.at(i, r + j) = ker[j][i];
    MatrixGF conj = inverse(basis) * a * basis;  // block diagonal by invariance
    FittingDecomposition f{r, t, MatrixGF(p, r, r), MatrixGF(p, t, t), basis};
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) f.invertible_part.at(i, j) = conj.at(i, j);
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < t; ++j) f.nilpotent_part.at(i, j) = conj.at(r + i, r + j);
    return f;
}

// Cycle lengths with counts, plus the transient profile of the nilpotent part.
struct CycleStructure {
    std::vector<std::pair<BigInt, BigInt>> cycles;  // (length, count), sorted by length
    std::vector<int> nil_kernel_dims;               // dim ker N^j, j = 1..nilpotency index
    int inv_dim = 0;
    int nil_dim = 0;

    BigInt periodic_states(std::uint32_t /*p*/) const {
        BigInt total = 0;
        for (const auto& [len, cnt] : cycles) total += len * cnt;
        return total;
    }

    bool operator==(const CycleStructure& o) const {
        return cycles == o.cycles && nil_kernel_dims == o.nil_kernel_dims;
    }
};

// Closed-form phase-space structure of x -> Ax. With s the order of the
// minimal polynomial of the invertible part, states of period dividing d
// number p^dim ker(A_inv^d - I); exact-period counts follow by subtraction
// over the divisor lattice of s.
inline CycleStructure predict_cycle_structure(const MatrixGF& a) {
    a.require_square();
    std::uint32_t p = a.modulus();
    FittingDecomposition fit = fitting_decomposition(a);
    CycleStructure cs;
    cs.inv_dim = fit.inv_dim;
    cs.nil_dim = fit.nil_dim;

    if (fit.inv_dim == 0) {
        cs.cycles.emplace_back(1, 1);  // only the origin is periodic
    } else {
        const MatrixGF& b = fit.invertible_part;
        BigInt s = upoly_order(min_poly(b));
        std::vector<BigInt> divs = divisors_of(s);
        std::map<BigInt, BigInt> states_dividing;  // d -> p^dim ker(B^d - I)
        for (const BigInt& d : divs) {
            MatrixGF bd = b.pow(d) - MatrixGF::identity(p, fit.inv_dim);
            states_dividing[d] = big_pow(p, kernel_dim(bd));
        }
        std::map<BigInt, BigInt> exact;
        for (const BigInt& d : divs) {
            BigInt e = states_dividing[d];
            for (const BigInt& d2 : divs) {
                if (d2 < d && d % d2 == 0) e -= exact[d2];
            }
            exact[d] = e;
            if (e > 0) cs.cycles.emplace_back(d, e / d);
        }
    }

    if (fit.nil_dim > 0) {
        MatrixGF npow = fit.nilpotent_part;
        for (;;) {
            cs.nil_kernel_dims.push_back(kernel_dim(npow));
            if (cs.nil_kernel_dims.back() == fit.nil_dim) break;
            npow = npow * fit.nilpotent_part;
        }
    }
    return cs;
}

// Cycle structure of the affine map x -> Ax + b via the (n+1)-square
// embedding: the embedded matrix acts on each slice {last = c}, the zero
// slice carrying the linear part and the p-1 others carrying copies of the
// affine dynamics.
inline CycleStructure affine_cycle_structure(const MatrixGF& a,
                                             const std::vector<std::uint32_t>& b) {
    if (is_zero_vector(b)) return predict_cycle_structure(a);
    std::uint32_t p = a.modulus();
    CycleStructure embedded = predict_cycle_structure(affine_embed(a, b));
    CycleStructure linear = predict_cycle_structure(a);
    std::map<BigInt, BigInt> counts;
    for (const auto& [len, cnt] : embedded.cycles) counts[len] += cnt;
    for (const auto& [len, cnt] : linear.cycles) counts[len] -= cnt;
    CycleStructure cs;
    cs.inv_dim = embedded.inv_dim;
    cs.nil_dim = embedded.nil_dim;
    cs.nil_kernel_dims = embedded.nil_kernel_dims;
    for (const auto& [len, cnt] : counts) {
        if (cnt == 0) continue;
        cs.cycles.emplace_back(len, cnt / (p - 1));
    }
    return cs;
}

inline std::vector<std::uint64_t> materialize_matrix(
    const MatrixGF& a, std::uint64_t budget = kDefaultBudget) {
    a.require_square();
    std::uint32_t p = a.modulus();
    int n = a.rows();
    std::uint64_t count = checked_state_count(p, n, budget);
    std::vector<std::uint64_t> table(count);
    for (std::uint64_t idx = 0; idx < count; ++idx)
        table[idx] = encode_config(a.apply(decode_config(idx, p, n)), p);
    return table;
}

inline PhaseSpace matrix_phase_space(const MatrixGF& a,
                                     std::uint64_t budget = kDefaultBudget) {
    return decompose_successors(a.modulus(), a.rows(), materialize_matrix(a, budget));
}

// Canonical code of the rooted tree of transient states hanging off `root`.
// Children are the transient predecessors; sorting child codes makes the code
// isomorphism-invariant.
inline std::string transient_tree_code(
    const PhaseSpace& ps, const std::vector<std::vector<std::uint64_t>>& pre,
    std::uint64_t root) {
    std::vector<std::string> child_codes;
    for (std::uint64_t u : pre[root])
        if (!ps.is_periodic(u)) child_codes.push_back(transient_tree_code(ps, pre, u));
    std::sort(child_codes.begin(), child_codes.end());
    std::string code = "(";
    for (const auto& c : child_codes) code += c;
    return code + ")";
}

struct TransientTreeReport {
    bool all_isomorphic = false;
    std::string tree_code;  // shared code when all_isomorphic
};

// Enumerates the phase space of x -> Ax and checks that the transient trees
// rooted at all periodic states are pairwise isomorphic.
inline TransientTreeReport verify_transient_trees(const MatrixGF& a,
                                                  std::uint64_t budget = kDefaultBudget) {
    PhaseSpace ps = matrix_phase_space(a, budget);
    auto pre = ps.predecessors();
    TransientTreeReport rep;
    bool first = true;
    for (const auto& cyc : ps.cycles)
        for (std::uint64_t v : cyc) {
            std::string code = transient_tree_code(ps, pre, v);
            if (first) {
                rep.tree_code = std::move(code);
                first = false;
            } else if (code != rep.tree_code) {
                rep.all_isomorphic = false;
                rep.tree_code.clear();
                return rep;
            }
        }
    rep.all_isomorphic = true;
    return rep;
}

}  // namespace fdsys
