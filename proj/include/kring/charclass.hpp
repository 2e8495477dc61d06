#pragma once

// Total characteristic classes in a truncated graded ring: inverses and powers
// of total classes, Chern classes of virtual sums of line bundles, Pontryagin
// classes from the complexification, and Wu and Stiefel-Whitney classes from
// Steenrod squares and a fundamental class.

#include "kring/exactlin.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kring {

// A graded ring with a chosen additive basis, each basis element homogeneous
// of some degree and of some additive order (0 for infinite). Elements are
// coordinate vectors, kept reduced modulo the orders.
struct TruncGradedRing {
    std::string name;
    int top = 0;
    std::vector<std::string> names;
    std::vector<int> degree;
    std::vector<Integer> order;
    std::vector<IntVector> mult;  // mult[i * size() + j] = e_i e_j
    std::size_t unit = 0;

    std::size_t size() const { return names.size(); }

    IntVector zero() const { return IntVector(size()); }
    IntVector basis(std::size_t i) const {
        IntVector e = zero();
        e[i] = 1;
        return reduce(e);
    }
    IntVector one() const { return basis(unit); }
    std::size_t index(const std::string& n) const {
        for (std::size_t i = 0; i < size(); ++i)
            if (names[i] == n) return i;
        throw StructuralError(name + ": no basis element " + n);
    }
    IntVector operator[](const std::string& n) const { return basis(index(n)); }

    IntVector reduce(IntVector x) const {
        for (std::size_t i = 0; i < size(); ++i)
            if (order[i] != 0) x[i] = mod_floor(x[i], order[i]);
        return x;
    }
    IntVector add(const IntVector& x, const IntVector& y) const {
        IntVector z(size());
        for (std::size_t i = 0; i < size(); ++i) z[i] = x[i] + y[i];
        return reduce(z);
    }
    IntVector scale(const Integer& k, const IntVector& x) const {
        IntVector z(size());
        for (std::size_t i = 0; i < size(); ++i) z[i] = k * x[i];
        return reduce(z);
    }
    IntVector sub(const IntVector& x, const IntVector& y) const { return add(x, scale(-1, y)); }
    IntVector mul(const IntVector& x, const IntVector& y) const {
        IntVector z(size());
        for (std::size_t i = 0; i < size(); ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < size(); ++j) {
                if (y[j] == 0) continue;
                const IntVector& e = mult[i * size() + j];
                Integer c = x[i] * y[j];
                for (std::size_t k = 0; k < size(); ++k)
                    if (e[k] != 0) z[k] += c * e[k];
            }
        }
        return reduce(z);
    }
    // Homogeneous part of degree k.
    IntVector part(const IntVector& x, int k) const {
        IntVector z = zero();
        for (std::size_t i = 0; i < size(); ++i)
            if (degree[i] == k) z[i] = x[i];
        return z;
    }
    bool is_zero(const IntVector& x) const {
        IntVector r = reduce(x);
        return std::all_of(r.begin(), r.end(), [](const Integer& v) { return v == 0; });
    }
    bool equal(const IntVector& x, const IntVector& y) const { return is_zero(sub(x, y)); }

    std::vector<std::size_t> basis_in_degree(int k) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < size(); ++i)
            if (degree[i] == k) out.push_back(i);
        return out;
    }
    FinAbGroup group_in_degree(int k) const {
        std::vector<Integer> orders;
        for (auto i : basis_in_degree(k)) orders.push_back(order[i]);
        return Presentation::cyclic(orders).group();
    }

    std::string str(const IntVector& x) const {
        IntVector r = reduce(x);
        std::string out;
        for (std::size_t i = 0; i < size(); ++i) {
            if (r[i] == 0) continue;
            std::string term = i == unit ? r[i].str() : (r[i] == 1 ? "" : r[i].str() + "*") + names[i];
            out += out.empty() ? term : " + " + term;
        }
        return out.empty() ? "0" : out;
    }

    // Unit, degree additivity, graded commutativity, associativity, and
    // compatibility of products with the additive orders. First failure or "".
    std::string violation() const {
        const std::size_t n = size();
        if (degree.size() != n || order.size() != n || mult.size() != n * n) return "table shapes disagree";
        if (degree[unit] != 0) return "unit is not in degree 0";
        for (std::size_t i = 0; i < n; ++i) {
            if (!equal(mul(one(), basis(i)), basis(i))) return "unit law fails on " + names[i];
            for (std::size_t j = 0; j < n; ++j) {
                IntVector ij = mul(basis(i), basis(j));
                const int d = degree[i] + degree[j];
                if (d > top && !is_zero(ij)) return "product above the top degree";
                if (!equal(ij, part(ij, d))) return names[i] + "*" + names[j] + " is not homogeneous";
                const int sign = (degree[i] % 2 != 0 && degree[j] % 2 != 0) ? -1 : 1;
                if (!equal(ij, scale(sign, mul(basis(j), basis(i))))) return "not graded commutative";
                if (order[i] != 0 && !is_zero(scale(order[i], ij))) return "products ignore the order of " + names[i];
                for (std::size_t k = 0; k < n; ++k)
                    if (!equal(mul(ij, basis(k)), mul(basis(i), mul(basis(j), basis(k))))) return "not associative";
            }
        }
        return {};
    }
};

// A ring whose basis is a set of monomials in graded generators, with the
// product of two basis monomials equal to their product monomial when that
// is a basis element and zero otherwise. Odd generators anticommute.
struct MonomialBasisElement {
    std::vector<int> exponents;
    Integer order;  // 0 for infinite
};

inline TruncGradedRing monomial_ring(std::string name, const std::vector<std::string>& gens,
                                     const std::vector<int>& gen_degrees,
                                     const std::vector<MonomialBasisElement>& basis) {
    TruncGradedRing r;
    r.name = std::move(name);
    const std::size_t n = basis.size(), g = gens.size();
    std::map<std::vector<int>, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& e = basis[i].exponents;
        if (e.size() != g) throw StructuralError(r.name + ": monomial has the wrong number of exponents");
        index[e] = i;
        int d = 0;
        std::string label;
        for (std::size_t k = 0; k < g; ++k) {
            d += e[k] * gen_degrees[k];
            if (e[k] == 0) continue;
            label += (label.empty() ? "" : " ") + gens[k] + (e[k] > 1 ? "^" + std::to_string(e[k]) : "");
        }
        r.names.push_back(label.empty() ? "1" : label);
        r.degree.push_back(d);
        r.order.push_back(basis[i].order);
        r.top = std::max(r.top, d);
    }
    auto unit = index.find(std::vector<int>(g, 0));
    if (unit == index.end()) throw StructuralError(r.name + ": basis lacks 1");
    r.unit = unit->second;
    r.mult.assign(n * n, IntVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<int> e(g);
            // Moving each odd generator of the right factor past the odd
            // generators of higher index on the left.
            int swaps = 0;
            for (std::size_t k = 0; k < g; ++k) {
                e[k] = basis[i].exponents[k] + basis[j].exponents[k];
                if (gen_degrees[k] % 2 == 0) continue;
                for (std::size_t l = k + 1; l < g; ++l)
                    if (gen_degrees[l] % 2 != 0) swaps += basis[j].exponents[k] * basis[i].exponents[l];
            }
            auto it = index.find(e);
            if (it != index.end()) r.mult[i * n + j][it->second] = swaps % 2 ? -1 : 1;
        }
    for (auto& v : r.mult) v = r.reduce(v);
    return r;
}

// ---------------------------------------------------------------------------
// Total classes

// Leading term 1 in degree 0 and nothing else in degree 0.
inline bool is_total_class(const TruncGradedRing& r, const IntVector& x) {
    return r.equal(r.part(x, 0), r.one());
}

inline IntVector series_inverse(const TruncGradedRing& r, const IntVector& x) {
    if (!is_total_class(r, x)) throw StructuralError("series inverse needs leading term 1");
    // x = 1 + a with a nilpotent: 1/x = sum (-a)^k, and a^k = 0 past the top.
    IntVector minus_a = r.sub(r.one(), x);
    IntVector term = r.one(), sum = r.one();
    for (int k = 1; k <= r.top; ++k) {
        term = r.mul(term, minus_a);
        if (r.is_zero(term)) break;
        sum = r.add(sum, term);
    }
    return sum;
}

inline IntVector class_power(const TruncGradedRing& r, const IntVector& x, long long e) {
    IntVector base = e < 0 ? series_inverse(r, x) : x;
    unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
    IntVector out = r.one();
    while (k) {
        if (k & 1) out = r.mul(out, base);
        base = r.mul(base, base);
        k >>= 1;
    }
    return out;
}

// c_k -> (-1)^k c_k, the Chern class of the conjugate bundle.
inline IntVector conjugate_class(const TruncGradedRing& r, const IntVector& c) {
    IntVector out = c;
    for (std::size_t i = 0; i < r.size(); ++i)
        if (r.degree[i] % 4 == 2) out[i] = -out[i];
    return r.reduce(out);
}

// Virtual bundles built from line bundles: a combination of tensor monomials
// L_1^{e_1} ... L_m^{e_m} (negative exponents allowed) with integer
// coefficients. The empty monomial is the trivial line.
using LineCombination = std::map<std::vector<int>, Integer>;

// Whitney: c of a sum is the product, c of a negative is the series inverse,
// c(L^e ...) = 1 + sum e_i c_1(L_i).
inline IntVector chern_of_combination(const TruncGradedRing& r, const std::vector<IntVector>& first_chern,
                                      const LineCombination& x) {
    IntVector total = r.one();
    for (const auto& [mono, coeff] : x) {
        if (mono.size() != first_chern.size()) throw StructuralError("monomial and Chern data disagree in length");
        IntVector c = r.one();
        for (std::size_t i = 0; i < mono.size(); ++i) {
            if (!r.equal(r.part(first_chern[i], 2), first_chern[i]))
                throw StructuralError("first Chern class data must live in degree 2");
            c = r.add(c, r.scale(mono[i], first_chern[i]));
        }
        total = r.mul(total, class_power(r, c, coeff.convert_to<long long>()));
    }
    return total;
}

// p_k = (-1)^k c_{2k} of the complexification.
inline IntVector pontryagin_from_chern(const TruncGradedRing& r, const IntVector& cx) {
    if (!is_total_class(r, cx)) throw StructuralError("Chern class must have leading term 1");
    IntVector p = r.zero();
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r.degree[i] % 4 != 0) continue;
        p[i] = r.degree[i] % 8 == 0 ? cx[i] : Integer(-cx[i]);
    }
    return r.reduce(p);
}

// ---------------------------------------------------------------------------
// Mod-2 cohomology with Steenrod squares

namespace detail {

// Solves a x = b over F_2 for x, with a given as rows (one per equation).
// nullopt when inconsistent; the returned solution is unique iff a has full
// column rank, reported through `unique`.
inline std::optional<std::vector<int>> solve_f2(std::vector<std::vector<int>> a, std::vector<int> b, std::size_t cols,
                                                bool& unique) {
    const std::size_t rows = a.size();
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        for (std::size_t i = 0; i < rows; ++i)
            if (i != r && a[i][c]) {
                for (std::size_t j = 0; j < cols; ++j) a[i][j] ^= a[r][j];
                b[i] ^= b[r];
            }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (b[i]) return std::nullopt;
    unique = r == cols;
    std::vector<int> x(cols, 0);
    for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
    return x;
}

inline int bit(const Integer& v) { return static_cast<int>(mod_floor(v, Integer(2))); }

}  // namespace detail

// A mod-2 cohomology ring of a closed manifold (all orders 2; the unique
// basis element of the top degree is the dual of the fundamental class) with
// known values of Sq^i on basis elements. Sq^0 = id, Sq^i = 0 below degree i
// and Sq^i(x) = x^2 in degree i are always known; anything else comes from
// the table or is unknown.
struct SteenrodRing {
    TruncGradedRing ring;
    std::map<int, std::map<std::size_t, IntVector>> table;

    std::size_t fundamental() const {
        auto top = ring.basis_in_degree(ring.top);
        if (top.size() != 1) throw StructuralError(ring.name + ": top degree must be one-dimensional");
        return top[0];
    }
    int pair(const IntVector& x, const IntVector& y) const {
        return detail::bit(ring.mul(x, y)[fundamental()]);
    }

    std::optional<IntVector> sq(int i, std::size_t b) const {
        const int d = ring.degree[b];
        if (i == 0) return ring.basis(b);
        if (i > d || d + i > ring.top || ring.basis_in_degree(d + i).empty()) return ring.zero();
        if (i == d) return ring.mul(ring.basis(b), ring.basis(b));
        auto t = table.find(i);
        if (t != table.end()) {
            auto e = t->second.find(b);
            if (e != t->second.end()) return ring.reduce(e->second);
        }
        return std::nullopt;
    }
    std::optional<IntVector> sq(int i, const IntVector& x) const {
        IntVector out = ring.zero();
        IntVector r = ring.reduce(x);
        for (std::size_t b = 0; b < ring.size(); ++b) {
            if (r[b] == 0) continue;
            auto s = sq(i, b);
            if (!s) return std::nullopt;
            out = ring.add(out, *s);
        }
        return out;
    }

    // Cup product pairing h^k x h^{n-k} -> F_2 is perfect in every degree.
    bool poincare_duality() const {
        for (int k = 0; k <= ring.top; ++k) {
            auto lo = ring.basis_in_degree(k), hi = ring.basis_in_degree(ring.top - k);
            if (lo.size() != hi.size()) return false;
            std::vector<std::vector<int>> m;
            for (auto a : lo) {
                std::vector<int> row;
                for (auto b : hi) row.push_back(pair(ring.basis(a), ring.basis(b)));
                m.push_back(row);
            }
            bool unique = false;
            if (!lo.empty() && (!detail::solve_f2(m, std::vector<int>(lo.size(), 0), hi.size(), unique) || !unique)) return false;
        }
        return true;
    }

    // The Cartan formula on every pair of basis elements where all terms are
    // known, for Sq^1 and Sq^2. Returns the first failing pair, or "".
    std::string cartan_violation() const {
        for (int i : {1, 2})
            for (std::size_t a = 0; a < ring.size(); ++a)
                for (std::size_t b = 0; b < ring.size(); ++b) {
                    auto lhs = sq(i, ring.mul(ring.basis(a), ring.basis(b)));
                    if (!lhs) continue;
                    IntVector rhs = ring.zero();
                    bool known = true;
                    for (int j = 0; j <= i && known; ++j) {
                        auto x = sq(j, a), y = sq(i - j, b);
                        if (!x || !y) known = false;
                        else rhs = ring.add(rhs, ring.mul(*x, *y));
                    }
                    if (known && !ring.equal(*lhs, rhs))
                        return "Sq^" + std::to_string(i) + "(" + ring.names[a] + " " + ring.names[b] + ")";
                }
        return {};
    }
};

// H*(RP^n; Z_2) = Z_2[a]/(a^{n+1}) with its full Steenrod action,
// Sq^i a^j = binom(j, i) a^{i+j}.
inline SteenrodRing real_projective_space(int n) {
    std::vector<MonomialBasisElement> basis;
    for (int j = 0; j <= n; ++j) basis.push_back({{j}, 2});
    SteenrodRing s{monomial_ring("RP^" + std::to_string(n), {"a"}, {1}, basis), {}};
    for (int j = 1; j <= n; ++j)
        for (int i = 1; i < j && i + j <= n; ++i)
            s.table[i][static_cast<std::size_t>(j)] =
                s.ring.scale(binomial(Integer(j), static_cast<unsigned>(i)), s.ring.basis(static_cast<std::size_t>(i + j)));
    return s;
}

// Wu classes from Sq^k(x) = v_k x on h^{n-k}, with v_k = 0 for k > n - k.
// Where Sq^k on h^{n-k} is not known, a known Stiefel-Whitney class w_k
// (for instance from a fibre restriction) determines v_k through
// w_k = sum_i Sq^i v_{k-i}.
inline IntVector wu_classes(const SteenrodRing& s, const std::map<int, IntVector>& known_sw = {}) {
    const TruncGradedRing& r = s.ring;
    const int n = r.top;
    std::vector<IntVector> v(static_cast<std::size_t>(n) + 1, r.zero());
    v[0] = r.one();
    for (int k = 1; 2 * k <= n; ++k) {
        auto unknowns = r.basis_in_degree(k);
        auto tests = r.basis_in_degree(n - k);
        if (unknowns.empty()) continue;
        std::vector<std::vector<int>> a;
        std::vector<int> b;
        bool determined = true;
        for (auto x : tests) {
            auto sx = s.sq(k, x);
            if (!sx) {
                determined = false;
                break;
            }
            std::vector<int> row;
            for (auto e : unknowns) row.push_back(s.pair(r.basis(e), r.basis(x)));
            a.push_back(row);
            b.push_back(detail::bit((*sx)[s.fundamental()]));
        }
        if (determined) {
            bool unique = false;
            auto sol = detail::solve_f2(a, b, unknowns.size(), unique);
            if (!sol) throw StructuralError("Steenrod data inconsistent with the pairing in degree " + std::to_string(k));
            if (!unique) throw StructuralError("pairing degenerate in degree " + std::to_string(k));
            for (std::size_t i = 0; i < unknowns.size(); ++i) v[static_cast<std::size_t>(k)][unknowns[i]] = (*sol)[i];
            continue;
        }
        auto w = known_sw.find(k);
        if (w == known_sw.end())
            throw StructuralError("Wu class in degree " + std::to_string(k) + " is not determined by the data");
        IntVector rest = r.zero();
        for (int i = 1; i <= k; ++i) {
            auto t = s.sq(i, v[static_cast<std::size_t>(k - i)]);
            if (!t) throw StructuralError("Sq^" + std::to_string(i) + " of a Wu class is unknown");
            rest = r.add(rest, *t);
        }
        v[static_cast<std::size_t>(k)] = r.sub(w->second, rest);
    }
    IntVector total = r.zero();
    for (const auto& x : v) total = r.add(total, x);
    return total;
}

// w = Sq(v), degree by degree.
inline IntVector sw_from_wu(const SteenrodRing& s, const IntVector& wu) {
    const TruncGradedRing& r = s.ring;
    IntVector w = r.zero();
    for (int d = 0; d <= r.top; ++d) {
        IntVector vd = r.part(wu, d);
        if (r.is_zero(vd)) continue;
        for (int i = 0; i <= d; ++i) {
            auto t = s.sq(i, vd);
            if (!t) throw StructuralError("Sq^" + std::to_string(i) + " of the Wu class in degree " +
                                          std::to_string(d) + " is unknown");
            w = r.add(w, *t);
        }
    }
    return w;
}

// A degree-preserving map of mod-2 rings given on basis elements, such as the
// restriction to a fibre. images[i] lives in the target ring.
struct RingRestriction {
    const TruncGradedRing* source;
    const TruncGradedRing* target;
    std::vector<IntVector> images;

    IntVector apply(const IntVector& x) const {
        IntVector out = target->zero();
        IntVector r = source->reduce(x);
        for (std::size_t i = 0; i < source->size(); ++i)
            if (r[i] != 0) out = target->add(out, target->scale(r[i], images[i]));
        return out;
    }
};

// Stiefel-Whitney classes of the total space in the degrees where restriction
// to the fibre is injective, from i^* w(E) = w(F).
inline std::map<int, IntVector> sw_from_fibre(const RingRestriction& i, const IntVector& w_fibre) {
    const TruncGradedRing& src = *i.source;
    std::map<int, IntVector> out;
    for (int k = 1; k <= src.top; ++k) {
        auto unknowns = src.basis_in_degree(k);
        auto coords = i.target->basis_in_degree(k);
        std::vector<std::vector<int>> a;
        std::vector<int> b;
        for (auto c : coords) {
            std::vector<int> row;
            for (auto e : unknowns) row.push_back(detail::bit(i.images[e][c]));
            a.push_back(row);
            b.push_back(detail::bit(w_fibre[c]));
        }
        if (unknowns.empty()) {
            if (std::any_of(b.begin(), b.end(), [](int x) { return x != 0; }))
                throw StructuralError("fibre class in degree " + std::to_string(k) + " is not a restriction");
            out[k] = src.zero();
            continue;
        }
        bool unique = false;
        auto sol = detail::solve_f2(a, b, unknowns.size(), unique);
        if (!sol || !unique) continue;
        IntVector w = src.zero();
        for (std::size_t j = 0; j < unknowns.size(); ++j) w[unknowns[j]] = (*sol)[j];
        out[k] = w;
    }
    return out;
}

}  // namespace kring
