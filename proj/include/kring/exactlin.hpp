#pragma once

// Exact integer linear algebra: Smith normal form, finitely generated abelian
// groups and homomorphisms between finite presentations.
//
// Convention: elements are row vectors. A presentation Z^n / rowspan(R) has
// one relation per row of R. A GroupMap matrix has one row per source
// generator, holding that generator's image in target coordinates.

#include "kring/bigint.hpp"
#include "kring/modular.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kring {

struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using IntVector = std::vector<Integer>;

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        for (const auto& r : rows) {
            if (r.size() != cols_) throw StructuralError("ragged matrix literal");
            for (long long x : r) a_.emplace_back(x);
        }
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static IntMatrix diagonal(const IntVector& d) {
        IntMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }
    static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
        IntMatrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw StructuralError("row length mismatch");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Integer& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    const std::vector<Integer>& entries() const { return a_; }

    IntVector row(std::size_t i) const {
        return IntVector(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                         a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }
    void append_row(const IntVector& r) {
        if (rows_ == 0 && cols_ == 0) cols_ = r.size();
        if (r.size() != cols_) throw StructuralError("row length mismatch");
        a_.insert(a_.end(), r.begin(), r.end());
        ++rows_;
    }
    void append_rows(const IntMatrix& o) {
        if (o.rows_ == 0) return;
        if (rows_ == 0 && cols_ == 0) cols_ = o.cols_;
        if (o.cols_ != cols_) throw StructuralError("column count mismatch");
        a_.insert(a_.end(), o.a_.begin(), o.a_.end());
        rows_ += o.rows_;
    }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }
    bool is_zero() const {
        return std::all_of(a_.begin(), a_.end(), [](const Integer& x) { return x == 0; });
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        if (a.cols_ != b.rows_) throw StructuralError("matrix product shape mismatch");
        IntMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Integer& x = a(i, k);
                if (x == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
            }
        return c;
    }
    friend IntMatrix operator+(IntMatrix a, const IntMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw StructuralError("matrix sum shape mismatch");
        for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] += b.a_[i];
        return a;
    }
    friend IntMatrix operator-(IntMatrix a, const IntMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw StructuralError("matrix difference shape mismatch");
        for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] -= b.a_[i];
        return a;
    }
    friend IntMatrix operator*(const Integer& s, IntMatrix a) {
        for (auto& x : a.a_) x *= s;
        return a;
    }
    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    // Kronecker product, used for tensor products of presentations.
    friend IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b) {
        IntMatrix k(a.rows_ * b.rows_, a.cols_ * b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j)
                for (std::size_t p = 0; p < b.rows_; ++p)
                    for (std::size_t q = 0; q < b.cols_; ++q)
                        k(i * b.rows_ + p, j * b.cols_ + q) = a(i, j) * b(p, q);
        return k;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Integer> a_;
};

inline IntVector row_times(const IntVector& x, const IntMatrix& m) {
    if (x.size() != m.rows()) throw StructuralError("vector/matrix shape mismatch");
    IntVector y(m.cols());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) y[j] += x[i] * m(i, j);
    }
    return y;
}

// Exact determinant by fraction-free elimination (Bareiss).
inline Integer determinant(IntMatrix m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw StructuralError("determinant of non-square matrix");
    if (n == 0) return 1;
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m(piv, k) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Smith normal form

// Below this size the Euclidean route is faster than the modular one.
inline constexpr std::size_t kModularThreshold = 24;

struct SnfOptions {
    bool want_u = true;
    bool want_v = true;
    bool want_vinv = false;
};

struct SmithForm {
    IntMatrix U, D, V;
    std::optional<IntMatrix> Vinv;
    std::size_t rank = 0;
    const Integer& diag(std::size_t i) const { return D(i, i); }
};

namespace detail {

// q with |a - q*b| <= |b|/2.
template <class T>
T nearest_quotient(const T& a, const T& b) {
    T q = a / b;
    T rem = a - q * b;
    T twice = rem + rem;
    if (abs_value(twice) > abs_value(b)) q = ((rem < T(0)) == (b < T(0))) ? q + T(1) : q - T(1);
    return q;
}

template <class T>
struct SnfState {
    std::size_t r = 0, c = 0;
    std::vector<T> d, u, v, vinv;
    bool track_u = true, track_v = true, track_vinv = false;

    T& D(std::size_t i, std::size_t j) { return d[i * c + j]; }
    T& U(std::size_t i, std::size_t j) { return u[i * r + j]; }
    T& V(std::size_t i, std::size_t j) { return v[i * c + j]; }
    T& Vi(std::size_t i, std::size_t j) { return vinv[i * c + j]; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < c; ++j) std::swap(D(a, j), D(b, j));
        if (track_u)
            for (std::size_t j = 0; j < r; ++j) std::swap(U(a, j), U(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < r; ++i) std::swap(D(i, a), D(i, b));
        if (track_v)
            for (std::size_t i = 0; i < c; ++i) std::swap(V(i, a), V(i, b));
        if (track_vinv)
            for (std::size_t j = 0; j < c; ++j) std::swap(Vi(a, j), Vi(b, j));
    }
    // row_i += q * row_k; columns below `from` of rows >= from are zero.
    void add_row(std::size_t i, std::size_t k, const T& q, std::size_t from) {
        for (std::size_t j = from; j < c; ++j)
            if (D(k, j) != T(0)) D(i, j) += q * D(k, j);
        if (track_u)
            for (std::size_t j = 0; j < r; ++j)
                if (U(k, j) != T(0)) U(i, j) += q * U(k, j);
    }
    // col_j += q * col_k
    void add_col(std::size_t j, std::size_t k, const T& q, std::size_t from) {
        for (std::size_t i = from; i < r; ++i)
            if (D(i, k) != T(0)) D(i, j) += q * D(i, k);
        if (track_v)
            for (std::size_t i = 0; i < c; ++i)
                if (V(i, k) != T(0)) V(i, j) += q * V(i, k);
        if (track_vinv)
            for (std::size_t x = 0; x < c; ++x)
                if (Vi(j, x) != T(0)) Vi(k, x) -= q * Vi(j, x);
    }
    void negate_row(std::size_t i) {
        for (std::size_t j = 0; j < c; ++j) D(i, j) = -D(i, j);
        if (track_u)
            for (std::size_t j = 0; j < r; ++j) U(i, j) = -U(i, j);
    }

    std::size_t run() {
        const std::size_t n = std::min(r, c);
        std::size_t t = 0;
        for (; t < n; ++t) {
            // Pivot: smallest |entry|; ties go to the least fill-in
            // (Markowitz cost), then to row-major order.
            std::vector<std::size_t> rnz(r, 0), cnz(c, 0);
            for (std::size_t i = t; i < r; ++i)
                for (std::size_t j = t; j < c; ++j)
                    if (D(i, j) != T(0)) ++rnz[i], ++cnz[j];
            bool found = false;
            std::size_t pi = 0, pj = 0, cost = 0;
            T best(0);
            for (std::size_t i = t; i < r; ++i)
                for (std::size_t j = t; j < c; ++j) {
                    const T& x = D(i, j);
                    if (x == T(0)) continue;
                    T ax = abs_value(x);
                    std::size_t mc = (rnz[i] - 1) * (cnz[j] - 1);
                    if (!found || ax < best || (ax == best && mc < cost)) {
                        found = true;
                        best = ax;
                        cost = mc;
                        pi = i;
                        pj = j;
                    }
                }
            if (!found) break;
            swap_rows(t, pi);
            swap_cols(t, pj);
            for (;;) {
                bool clean = true;
                for (std::size_t i = t + 1; i < r; ++i) {
                    if (D(i, t) == T(0)) continue;
                    T q = nearest_quotient(D(i, t), D(t, t));
                    if (q != T(0)) add_row(i, t, -q, t);
                    if (D(i, t) != T(0)) clean = false;
                }
                for (std::size_t j = t + 1; j < c; ++j) {
                    if (D(t, j) == T(0)) continue;
                    T q = nearest_quotient(D(t, j), D(t, t));
                    if (q != T(0)) add_col(j, t, -q, t);
                    if (D(t, j) != T(0)) clean = false;
                }
                if (!clean) {
                    // Remainders are strictly smaller than the pivot.
                    std::size_t bi = t, bj = t;
                    T b = abs_value(D(t, t));
                    for (std::size_t i = t + 1; i < r; ++i)
                        if (D(i, t) != T(0) && abs_value(D(i, t)) < b) { b = abs_value(D(i, t)); bi = i; bj = t; }
                    for (std::size_t j = t + 1; j < c; ++j)
                        if (D(t, j) != T(0) && abs_value(D(t, j)) < b) { b = abs_value(D(t, j)); bi = t; bj = j; }
                    swap_rows(t, bi);
                    swap_cols(t, bj);
                    continue;
                }
                // Pivot must divide the remaining block.
                bool fixed = false;
                for (std::size_t i = t + 1; i < r && !fixed; ++i)
                    for (std::size_t j = t + 1; j < c; ++j)
                        if (D(i, j) % D(t, t) != T(0)) {
                            add_row(t, i, T(1), t);
                            fixed = true;
                            break;
                        }
                if (!fixed) break;
            }
            if (D(t, t) < T(0)) negate_row(t);
        }
        return t;
    }
};

template <class T, class Conv>
SnfState<T> init_state(const IntMatrix& m, const SnfOptions& opt, Conv conv) {
    SnfState<T> s;
    s.r = m.rows();
    s.c = m.cols();
    s.track_u = opt.want_u;
    s.track_v = opt.want_v;
    s.track_vinv = opt.want_vinv;
    s.d.reserve(s.r * s.c);
    for (const auto& x : m.entries()) s.d.push_back(conv(x));
    auto ident = [](std::vector<T>& a, std::size_t n) {
        a.assign(n * n, T(0));
        for (std::size_t i = 0; i < n; ++i) a[i * n + i] = T(1);
    };
    if (s.track_u) ident(s.u, s.r);
    if (s.track_v) ident(s.v, s.c);
    if (s.track_vinv) ident(s.vinv, s.c);
    return s;
}

template <class T, class Back>
SmithForm finish(SnfState<T>& s, std::size_t rank, Back back) {
    auto out = [&](std::vector<T>& a, std::size_t rows, std::size_t cols) {
        IntMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows * cols; ++i) m(i / cols, i % cols) = back(a[i]);
        return m;
    };
    SmithForm f;
    f.rank = rank;
    f.D = out(s.d, s.r, s.c);
    if (s.track_u) f.U = out(s.u, s.r, s.r);
    if (s.track_v) f.V = out(s.v, s.c, s.c);
    if (s.track_vinv) f.Vinv = out(s.vinv, s.c, s.c);
    return f;
}

}  // namespace detail

// U·m·V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... , d_i >= 0.
// Transforms that are not requested come back empty.
// Runs in checked int64 first and restarts in Integer on overflow; both
// paths take identical pivots, so the output does not depend on which ran.
inline SmithForm smith_normal_form(const IntMatrix& m, const SnfOptions& opt = {}) {
    // Large full-rank input without transforms: the diagonal is canonical, so
    // the multi-modular route gives the same answer without coefficient growth.
    if (!opt.want_u && !opt.want_v && !opt.want_vinv && std::min(m.rows(), m.cols()) >= kModularThreshold) {
        if (auto inv = detail::full_rank_invariants(m.entries(), m.rows(), m.cols())) {
            SmithForm f;
            f.rank = inv->size();
            f.D = IntMatrix(m.rows(), m.cols());
            for (std::size_t i = 0; i < inv->size(); ++i) f.D(i, i) = (*inv)[i];
            return f;
        }
    }
    bool small = std::all_of(m.entries().begin(), m.entries().end(),
                             [](const Integer& x) { return Checked64::fits(x); });
    if (small) {
        try {
            auto s = detail::init_state<Checked64>(m, opt, [](const Integer& x) { return Checked64::from(x); });
            std::size_t rank = s.run();
            return detail::finish(s, rank, [](const Checked64& x) { return x.to_integer(); });
        } catch (const Overflow&) {
        }
    }
    auto s = detail::init_state<Integer>(m, opt, [](const Integer& x) { return x; });
    std::size_t rank = s.run();
    return detail::finish(s, rank, [](const Integer& x) { return x; });
}

// ---------------------------------------------------------------------------
// Finitely generated abelian groups

struct FinAbGroup {
    std::size_t free_rank = 0;
    std::vector<Integer> torsion;  // d1 | d2 | ..., each >= 2

    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    bool is_finite() const { return free_rank == 0; }
    bool is_free() const { return torsion.empty(); }
    std::size_t generator_count() const { return free_rank + torsion.size(); }

    // Order of a finite group; 0 for infinite groups.
    Integer order() const {
        if (free_rank) return 0;
        Integer o = 1;
        for (const auto& d : torsion) o *= d;
        return o;
    }
    Integer torsion_order() const {
        Integer o = 1;
        for (const auto& d : torsion) o *= d;
        return o;
    }
    bool has_two_torsion() const {
        return std::any_of(torsion.begin(), torsion.end(), [](const Integer& d) { return d % 2 == 0; });
    }
    bool killed_by(const Integer& n) const {
        return free_rank == 0 && std::all_of(torsion.begin(), torsion.end(), [&](const Integer& d) { return n % d == 0; });
    }

    friend bool operator==(const FinAbGroup& a, const FinAbGroup& b) {
        return a.free_rank == b.free_rank && a.torsion == b.torsion;
    }
    friend bool operator!=(const FinAbGroup& a, const FinAbGroup& b) { return !(a == b); }

    // "Z^2 + Z_5^2", "0" when trivial.
    std::string str() const {
        std::vector<std::string> parts;
        if (free_rank == 1) parts.push_back("Z");
        if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
        for (std::size_t i = 0; i < torsion.size();) {
            std::size_t j = i;
            while (j < torsion.size() && torsion[j] == torsion[i]) ++j;
            std::string s = "Z_" + torsion[i].str();
            if (j - i > 1) s += "^" + std::to_string(j - i);
            parts.push_back(s);
            i = j;
        }
        if (parts.empty()) return "0";
        std::string out = parts[0];
        for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
        return out;
    }
};

// Canonical form of Z^gens / rowspan(rels).
inline FinAbGroup quotient_presentation(std::size_t gens, const IntMatrix& rels) {
    if (rels.rows() && rels.cols() != gens) throw StructuralError("relation matrix has wrong column count");
    if (rels.rows() == 0) return FinAbGroup{gens, {}};
    SmithForm f = smith_normal_form(rels, {false, false, false});
    FinAbGroup g;
    g.free_rank = gens - f.rank;
    for (std::size_t i = 0; i < f.rank; ++i)
        if (f.diag(i) != 1) g.torsion.push_back(f.diag(i));
    return g;
}

// Canonical form of Z^free + sum of Z_{orders}. Orders of 0 mean Z, 1 is dropped.
inline FinAbGroup make_group(std::size_t free_rank, const std::vector<Integer>& orders = {}) {
    IntMatrix rels(0, orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (orders[i] == 0) continue;
        IntVector r(orders.size());
        r[i] = abs_value(orders[i]);
        rels.append_row(r);
    }
    FinAbGroup g = quotient_presentation(orders.size(), rels);
    g.free_rank += free_rank;
    return g;
}

inline FinAbGroup direct_sum(const FinAbGroup& a, const FinAbGroup& b) {
    std::vector<Integer> orders = a.torsion;
    orders.insert(orders.end(), b.torsion.begin(), b.torsion.end());
    return make_group(a.free_rank + b.free_rank, orders);
}

inline FinAbGroup tensor(const FinAbGroup& a, const FinAbGroup& b) {
    std::size_t free = a.free_rank * b.free_rank;
    std::vector<Integer> orders;
    for (std::size_t i = 0; i < a.free_rank; ++i) orders.insert(orders.end(), b.torsion.begin(), b.torsion.end());
    for (std::size_t i = 0; i < b.free_rank; ++i) orders.insert(orders.end(), a.torsion.begin(), a.torsion.end());
    for (const auto& x : a.torsion)
        for (const auto& y : b.torsion) orders.push_back(gcd(x, y));
    return make_group(free, orders);
}

// ---------------------------------------------------------------------------
// Lattices in Z^n given by generating rows

// Rows spanning {x : x·a = 0}.
inline IntMatrix left_kernel(const IntMatrix& a) {
    SmithForm f = smith_normal_form(a, {true, false, false});
    IntMatrix k(0, a.rows());
    for (std::size_t i = f.rank; i < a.rows(); ++i) k.append_row(f.U.row(i));
    return k;
}

inline bool in_row_span(const IntMatrix& gens, const IntVector& x) {
    if (gens.rows() == 0) return std::all_of(x.begin(), x.end(), [](const Integer& v) { return v == 0; });
    SmithForm f = smith_normal_form(gens, {false, true, false});
    IntVector y = row_times(x, f.V);
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i < f.rank) {
            if (y[i] % f.diag(i) != 0) return false;
        } else if (y[i] != 0) {
            return false;
        }
    }
    return true;
}

// Some w with w·a = z, if one exists.
inline std::optional<IntVector> solve_left(const IntMatrix& a, const IntVector& z) {
    if (z.size() != a.cols()) throw StructuralError("solve_left shape mismatch");
    SmithForm f = smith_normal_form(a);
    IntVector y = row_times(z, f.V);
    IntVector wp(a.rows());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i < f.rank) {
            if (y[i] % f.diag(i) != 0) return std::nullopt;
            wp[i] = y[i] / f.diag(i);
        } else if (y[i] != 0) {
            return std::nullopt;
        }
    }
    return row_times(wp, f.U);
}

// outer / inner for lattices inner ⊆ outer ⊆ Z^n, both given by generating rows.
inline FinAbGroup subquotient(const IntMatrix& outer, const IntMatrix& inner, std::size_t n) {
    if (outer.rows() == 0) {
        if (!inner.is_zero()) throw StructuralError("subquotient: inner lattice not contained in outer");
        return FinAbGroup{};
    }
    if (outer.cols() != n || (inner.rows() && inner.cols() != n)) throw StructuralError("subquotient shape mismatch");
    SmithForm f = smith_normal_form(outer, {false, true, false});
    // Basis of outer: d_i * (row i of V^{-1}); coordinates of x are (x·V)_i / d_i.
    IntMatrix coords(0, f.rank);
    for (std::size_t k = 0; k < inner.rows(); ++k) {
        IntVector y = row_times(inner.row(k), f.V);
        IntVector c(f.rank);
        for (std::size_t i = 0; i < n; ++i) {
            if (i < f.rank) {
                if (y[i] % f.diag(i) != 0) throw StructuralError("subquotient: inner lattice not contained in outer");
                c[i] = y[i] / f.diag(i);
            } else if (y[i] != 0) {
                throw StructuralError("subquotient: inner lattice not contained in outer");
            }
        }
        coords.append_row(c);
    }
    return quotient_presentation(f.rank, coords);
}

inline IntMatrix stack(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix s = a;
    if (s.rows() == 0) s = IntMatrix(0, b.cols());
    s.append_rows(b);
    return s;
}

// ---------------------------------------------------------------------------
// Presentations and maps

struct Presentation {
    std::size_t gens = 0;
    IntMatrix rels;  // rows in Z^gens

    Presentation() : rels(0, 0) {}
    Presentation(std::size_t n, IntMatrix r) : gens(n), rels(std::move(r)) {
        if (rels.rows() == 0) rels = IntMatrix(0, n);
        if (rels.cols() != n) throw StructuralError("presentation relation width mismatch");
    }
    static Presentation free(std::size_t n) { return Presentation(n, IntMatrix(0, n)); }
    // Cyclic generators of the given orders (0 for infinite order).
    static Presentation cyclic(const std::vector<Integer>& orders) {
        IntMatrix r(0, orders.size());
        for (std::size_t i = 0; i < orders.size(); ++i) {
            if (orders[i] == 0) continue;
            IntVector row(orders.size());
            row[i] = orders[i];
            r.append_row(row);
        }
        return Presentation(orders.size(), r);
    }
    static Presentation of(const FinAbGroup& g) {
        std::vector<Integer> orders(g.free_rank, 0);
        orders.insert(orders.end(), g.torsion.begin(), g.torsion.end());
        return cyclic(orders);
    }

    FinAbGroup group() const { return quotient_presentation(gens, rels); }
    bool is_zero(const IntVector& x) const { return in_row_span(rels, x); }
    bool equal(const IntVector& x, const IntVector& y) const {
        IntVector d(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
        return is_zero(d);
    }
};

inline Presentation tensor(const Presentation& a, const Presentation& b) {
    IntMatrix r = kronecker(a.rels, IntMatrix::identity(b.gens));
    r = stack(r, kronecker(IntMatrix::identity(a.gens), b.rels));
    return Presentation(a.gens * b.gens, r);
}

// Reduces elements of a presentation to a unique coordinate vector in the
// canonical decomposition: free coordinates first, then torsion coordinates
// reduced into [0, d_i).
class NormalForm {
public:
    explicit NormalForm(const Presentation& p) : n_(p.gens) {
        SmithForm f = smith_normal_form(p.rels.rows() ? p.rels : IntMatrix(0, p.gens), {false, true, true});
        V_ = f.V;
        Vinv_ = *f.Vinv;
        for (std::size_t i = 0; i < n_; ++i) {
            if (i >= f.rank) free_.push_back(i);
            else if (f.diag(i) != 1) { tors_.push_back(i); mod_.push_back(f.diag(i)); }
        }
        group_.free_rank = free_.size();
        group_.torsion = mod_;
    }

    const FinAbGroup& group() const { return group_; }
    std::size_t size() const { return free_.size() + tors_.size(); }

    IntVector coords(const IntVector& x) const {
        IntVector y = row_times(x, V_);
        IntVector c;
        c.reserve(size());
        for (auto i : free_) c.push_back(y[i]);
        for (std::size_t k = 0; k < tors_.size(); ++k) c.push_back(mod_floor(y[tors_[k]], mod_[k]));
        return c;
    }
    // Generator of canonical summand k, in presentation coordinates.
    IntVector generator(std::size_t k) const {
        std::size_t i = k < free_.size() ? free_[k] : tors_[k - free_.size()];
        return Vinv_.row(i);
    }
    IntVector element(const IntVector& c) const {
        IntVector x(n_);
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (c[k] == 0) continue;
            IntVector g = generator(k);
            for (std::size_t j = 0; j < n_; ++j) x[j] += c[k] * g[j];
        }
        return x;
    }

private:
    std::size_t n_;
    IntMatrix V_, Vinv_;
    std::vector<std::size_t> free_, tors_;
    std::vector<Integer> mod_;
    FinAbGroup group_;
};

struct GroupMap {
    Presentation source, target;
    IntMatrix matrix;  // source.gens rows, target.gens cols

    GroupMap() = default;
    GroupMap(Presentation s, Presentation t, IntMatrix m) : source(std::move(s)), target(std::move(t)), matrix(std::move(m)) {
        if (matrix.rows() == 0 && matrix.cols() == 0) matrix = IntMatrix(source.gens, target.gens);
        if (matrix.rows() != source.gens || matrix.cols() != target.gens) throw StructuralError("map matrix shape mismatch");
    }
    static GroupMap zero(const Presentation& s, const Presentation& t) { return GroupMap(s, t, IntMatrix(s.gens, t.gens)); }
    static GroupMap scalar(const Presentation& p, const Integer& k) {
        return GroupMap(p, p, k * IntMatrix::identity(p.gens));
    }

    IntVector apply(const IntVector& x) const { return row_times(x, matrix); }

    // Relations of the source land in relations of the target.
    bool well_formed() const {
        for (std::size_t i = 0; i < source.rels.rows(); ++i)
            if (!target.is_zero(apply(source.rels.row(i)))) return false;
        return true;
    }
    void require_well_formed() const {
        if (!well_formed()) throw StructuralError("malformed group map: relations not preserved");
    }
    bool is_zero() const {
        for (std::size_t i = 0; i < matrix.rows(); ++i)
            if (!target.is_zero(matrix.row(i))) return false;
        return true;
    }

    // Lattice in Z^{source.gens} of elements mapping to zero (contains source relations).
    IntMatrix kernel_lattice() const {
        IntMatrix s = stack(matrix, Integer(-1) * target.rels);
        IntMatrix k = left_kernel(s);
        IntMatrix out(0, source.gens);
        for (std::size_t i = 0; i < k.rows(); ++i) {
            IntVector r(source.gens);
            for (std::size_t j = 0; j < source.gens; ++j) r[j] = k(i, j);
            out.append_row(r);
        }
        return out;
    }
    IntMatrix image_lattice() const { return stack(matrix, target.rels); }
};

inline GroupMap compose(const GroupMap& g, const GroupMap& f) {
    if (f.target.gens != g.source.gens) throw StructuralError("composition shape mismatch");
    return GroupMap(f.source, g.target, f.matrix * g.matrix);
}

inline FinAbGroup cokernel(const GroupMap& f) {
    f.require_well_formed();
    return quotient_presentation(f.target.gens, f.image_lattice());
}

inline FinAbGroup kernel(const GroupMap& f) {
    f.require_well_formed();
    return subquotient(f.kernel_lattice(), f.source.rels, f.source.gens);
}

inline FinAbGroup image(const GroupMap& f) {
    f.require_well_formed();
    return subquotient(f.image_lattice(), f.target.rels, f.target.gens);
}

inline bool is_injective(const GroupMap& f) { return kernel(f).is_trivial(); }
inline bool is_surjective(const GroupMap& f) { return cokernel(f).is_trivial(); }

}  // namespace kring
