#pragma once

// Decision procedures for surjectivity of the real alpha map RO(H) -> KO(G/H):
// the full-flag criterion on counts of basic representations by type, the
// cohomological criterion in dimension at most 7, the mod-8 table for
// products of spheres, and the two product rules. Each verdict names the rule
// that produced it.

#include "kring/ahss.hpp"
#include "kring/charclass.hpp"
#include "kring/tate.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kring {

enum class Verdict { surjective, not_surjective, undetermined };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::surjective: return "surjective";
        case Verdict::not_surjective: return "not_surjective";
        default: return "undetermined";
    }
}

struct SurjectivityVerdict {
    Verdict verdict = Verdict::undetermined;
    std::string rule;  // empty only for undetermined verdicts
    std::string detail;

    bool surjective() const { return verdict == Verdict::surjective; }
    friend bool operator==(const SurjectivityVerdict& a, const SurjectivityVerdict& b) { return a.verdict == b.verdict; }
};

struct OutOfScope : std::domain_error {
    using std::domain_error::domain_error;
};

// ---------------------------------------------------------------------------
// Simple factors

// family is the Cartan type letter, or 'T' for a circle factor.
struct SimpleFactorData {
    std::string name;
    char family = 'A';
    int rank = 1;
    int b_C = 0, b_R = 0, b_H = 0;
    bool conjugation_trivial = true;
};

// Conjugation acts trivially on R(H) unless H has a circle factor or a simple
// factor of type A_n (n >= 2), D_n (n odd, n >= 5) or E_6. D_3 = A_3 is
// already excluded as SU(4).
inline bool conjugation_trivial_by_type(char family, int rank) {
    switch (family) {
        case 'T': return false;
        case 'A': return rank < 2;
        case 'D': return !(rank % 2 == 1 && rank >= 5);
        case 'E': return rank != 6;
        default: return true;
    }
}

inline bool conjugation_trivial(const std::vector<SimpleFactorData>& factors) {
    return std::all_of(factors.begin(), factors.end(),
                       [](const SimpleFactorData& f) { return conjugation_trivial_by_type(f.family, f.rank); });
}

inline void validate_factor(const SimpleFactorData& f) {
    if (f.b_C < 0 || f.b_R < 0 || f.b_H < 0) throw StructuralError(f.name + ": negative representation count");
    if (f.b_C % 2 != 0) throw StructuralError(f.name + ": complex representations come in conjugate pairs");
    if (f.family != 'T' && f.b_C + f.b_R + f.b_H != f.rank)
        throw StructuralError(f.name + ": basic representations must number the rank");
    // Conjugation swaps the complex-type basic representations and fixes the rest.
    if (f.conjugation_trivial != (f.b_C == 0 && f.family != 'T'))
        throw StructuralError(f.name + ": conjugation flag disagrees with the complex-type count");
    if (f.conjugation_trivial != conjugation_trivial_by_type(f.family, f.rank))
        throw StructuralError(f.name + ": conjugation flag disagrees with the type rule");
}

// Basic representation counts from standard Lie theory: exterior powers of the
// defining representation for the classical families (real for orthogonal,
// alternating quaternionic/real for symplectic, self-conjugate only in the
// middle for SU), and spin representations whose type depends on the
// dimension mod 8. Every simple simply connected type of rank <= max_rank
// appears once, under its usual name.
inline std::vector<SimpleFactorData> standard_flag_catalog(int max_rank) {
    std::vector<SimpleFactorData> out;
    auto add = [&](std::string name, char fam, int rank, int c, int r, int h) {
        if (rank > max_rank) return;
        out.push_back({std::move(name), fam, rank, c, r, h, c == 0});
    };
    for (int n = 1; n <= max_rank; ++n) {
        const int m = n + 1;
        if (m % 2 == 1) add("SU(" + std::to_string(m) + ")", 'A', n, m - 1, 0, 0);
        else add("SU(" + std::to_string(m) + ")", 'A', n, m - 2, (m / 2) % 2 == 0, (m / 2) % 2 == 1);
    }
    for (int n = 3; n <= max_rank; ++n) {
        const bool spin_real = n % 4 == 0 || n % 4 == 3;
        add("Spin(" + std::to_string(2 * n + 1) + ")", 'B', n, 0, n - 1 + spin_real, !spin_real);
    }
    for (int n = 2; n <= max_rank; ++n) add("Sp(" + std::to_string(n) + ")", 'C', n, 0, n / 2, (n + 1) / 2);
    for (int n = 4; n <= max_rank; ++n) {
        const int c = n % 2 == 1 ? 2 : 0, r = n - 2 + (n % 4 == 0 ? 2 : 0), h = n % 4 == 2 ? 2 : 0;
        add("Spin(" + std::to_string(2 * n) + ")", 'D', n, c, r, h);
    }
    add("G2", 'G', 2, 0, 2, 0);
    add("F4", 'F', 4, 0, 4, 0);
    add("E6", 'E', 6, 4, 2, 0);
    add("E7", 'E', 7, 0, 4, 3);
    add("E8", 'E', 8, 0, 8, 0);
    for (const auto& f : out) validate_factor(f);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    return out;
}

// ---------------------------------------------------------------------------
// Full flag manifolds

// KO^0(G/T)/r is the degree-0 part of an exterior algebra over Z_2 on b_H
// generators of degree 1 and b_C/2 + b_R of degree 3 (grading mod 4); alpha_O
// is onto iff that part is just the unit.
inline SurjectivityVerdict flag_surjective(const std::vector<SimpleFactorData>& factors) {
    int c = 0, r = 0, h = 0;
    for (const auto& f : factors) {
        validate_factor(f);
        c += f.b_C;
        r += f.b_R;
        h += f.b_H;
    }
    const int odd = c / 2 + r;
    const std::string counts = "b_C=" + std::to_string(c) + " b_R=" + std::to_string(r) + " b_H=" + std::to_string(h);
    const std::string rule = "full flag: b_H <= 3, b_C/2 + b_R <= 3, and b_H = 0 or b_C + b_R = 0";
    if (h <= 3 && odd <= 3 && (h == 0 || c + r == 0)) return {Verdict::surjective, rule, counts};
    return {Verdict::not_surjective, rule, counts};
}

struct FlagProduct {
    std::vector<SimpleFactorData> factors;  // sorted by name

    std::string name() const {
        std::string s;
        for (const auto& f : factors) s += (s.empty() ? "" : " x ") + f.name;
        return s;
    }
    std::vector<std::string> names() const {
        std::vector<std::string> v;
        for (const auto& f : factors) v.push_back(f.name);
        return v;
    }
};

// All multisets of 1..max_factors catalog entries whose flag manifold passes
// the criterion, ordered by factor count and then by factor names. Counts
// only grow when factors are added, so failing prefixes are pruned.
inline std::vector<FlagProduct> enumerate_flag_products(std::vector<SimpleFactorData> catalog, int max_factors) {
    std::sort(catalog.begin(), catalog.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    std::vector<FlagProduct> out;
    FlagProduct cur;
    std::function<void(std::size_t)> walk = [&](std::size_t from) {
        if (static_cast<int>(cur.factors.size()) == max_factors) return;
        for (std::size_t i = from; i < catalog.size(); ++i) {
            cur.factors.push_back(catalog[i]);
            if (flag_surjective(cur.factors).surjective()) {
                out.push_back(cur);
                walk(i);
            }
            cur.factors.pop_back();
        }
    };
    walk(0);
    std::stable_sort(out.begin(), out.end(), [](const FlagProduct& a, const FlagProduct& b) {
        if (a.factors.size() != b.factors.size()) return a.factors.size() < b.factors.size();
        return a.names() < b.names();
    });
    return out;
}

// ---------------------------------------------------------------------------
// Dimension at most 7

// Tor(A, B) of finitely generated groups: one Z_gcd per pair of cyclic
// torsion summands.
inline FinAbGroup tor(const FinAbGroup& a, const FinAbGroup& b) {
    std::vector<Integer> orders;
    for (const auto& x : a.torsion)
        for (const auto& y : b.torsion) orders.push_back(gcd(x, y));
    return make_group(0, orders);
}

// Integral cohomology of a product by the Künneth theorem with Tor terms.
// Sq^2 is not carried (left zero), so the result is for group-level criteria.
inline CohomologyTable kunneth_integral(const CohomologyTable& a, const CohomologyTable& b) {
    CohomologyTable t;
    t.name = a.name + " x " + b.name;
    t.dimension = a.dimension + b.dimension;
    for (int k = 0; k <= t.dimension; ++k) {
        FinAbGroup g;
        for (int i = 0; i <= k; ++i) g = direct_sum(g, tensor(a.H(i), b.H(k - i)));
        for (int i = 0; i <= k + 1; ++i) g = direct_sum(g, tor(a.H(i), b.H(k + 1 - i)));
        t.integral.push_back(g);
        t.sq2.emplace_back(std::nullopt);
    }
    t.validate();
    return t;
}

// A table from its integral groups only.
inline CohomologyTable table_from_groups(std::string name, std::vector<FinAbGroup> groups) {
    CohomologyTable t{std::move(name), static_cast<int>(groups.size()) - 1, std::move(groups), {}};
    t.sq2.assign(t.integral.size(), std::nullopt);
    t.validate();
    return t;
}

// For a simply connected closed M^n with n <= 7: no 2-torsion in H^{n-2}
// makes reduced realification onto; with H^5 torsion-free the converse
// holds too.
inline SurjectivityVerdict dim7_realification_surjective(const CohomologyTable& c) {
    if (c.dimension > 7) throw OutOfScope(c.name + ": the cohomological criterion covers dimension <= 7 only");
    const int n = c.dimension;
    const FinAbGroup& h = c.H(n - 2);
    if (!h.has_two_torsion())
        return {Verdict::surjective, "no 2-torsion in H^{n-2}", "H^" + std::to_string(n - 2) + " = " + h.str()};
    if (c.H(5).is_free())
        return {Verdict::not_surjective, "2-torsion in H^{n-2} with H^5 torsion-free",
                "H^" + std::to_string(n - 2) + " = " + h.str()};
    return {Verdict::undetermined, "", "2-torsion in H^{n-2} and torsion in H^5"};
}

// The homogeneous spaces of dimension <= 7 with torsion or irregular
// cohomology, with parameters fixed where the space is a family.
inline CohomologyTable wu_manifold_table() {
    return table_from_groups("Wu", {make_group(1), {}, {}, make_group(0, {2}), {}, make_group(1)});
}
inline CohomologyTable aloff_wallach_table(long p, long q) {
    const Integer o = abs_value(Integer(p * p + q * q + p * q));
    return table_from_groups("W^7_{" + std::to_string(p) + "," + std::to_string(q) + "}",
                             {make_group(1), {}, make_group(1), {}, make_group(0, {o}), make_group(1), {}, make_group(1)});
}
inline CohomologyTable n_pq_table(long p, long q) {
    return table_from_groups("N^7_{" + std::to_string(p) + "," + std::to_string(q) + "}",
                             {make_group(1), {}, make_group(1), {}, make_group(0, {Integer(q * q)}), make_group(1), {},
                              make_group(1)});
}
inline CohomologyTable n_pqr_table(long p, long q, long r) {
    const Integer o = abs_value(Integer(2 * p * q * r));
    return table_from_groups(
        "N^7_{" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r) + "}",
        {make_group(1), {}, make_group(2), {}, make_group(0, {o}), make_group(2), {}, make_group(1)});
}

inline std::vector<CohomologyTable> dim7_table() {
    return {
        wu_manifold_table(),
        table_from_groups("W^6", {make_group(1), {}, make_group(2), {}, make_group(2), {}, make_group(1)}),
        table_from_groups("Gr~_{2,5}", {make_group(1), {}, make_group(1), {}, make_group(1), {}, make_group(1)}),
        table_from_groups("B^7", {make_group(1), {}, {}, {}, make_group(0, {10}), {}, {}, make_group(1)}),
        table_from_groups("T_1 S^4", {make_group(1), {}, {}, {}, make_group(0, {2}), {}, {}, make_group(1)}),
        aloff_wallach_table(1, 1),
        n_pq_table(1, 2),
        n_pqr_table(1, 1, 1),
    };
}

// H*(Wu; Z_2) = span{1, x2, x3, x2 x3} with Sq^1 x2 = x3 and Sq^2 x3 = x2 x3
// (Sq^2 on the top-minus-two degree is nonzero because w_2(Wu) != 0).
inline SteenrodRing wu_manifold_mod2() {
    SteenrodRing s{monomial_ring("H*(Wu;Z_2)", {"x2", "x3"}, {2, 3}, {{{0, 0}, 2}, {{1, 0}, 2}, {{0, 1}, 2}, {{1, 1}, 2}}), {}};
    s.table[1][s.ring.index("x2")] = s.ring["x3"];
    s.table[2][s.ring.index("x3")] = s.ring["x2 x3"];
    return s;
}

// Cokernel of reduction H^p(M; Z) -> H^p(M; Z_2).
inline GroupMap reduction_map(const CohomologyTable& c, int p) {
    return GroupMap(c.integral_presentation(p), c.mod2_presentation(p), c.reduction(p));
}

// S^2 x Wu: the criterion above does not decide it (H^5 has 2-torsion), so
// the cokernel of realification is read off as the cokernel of reduction in
// degree 2, and w_2 of the product is checked to generate it.
struct S2WuAnalysis {
    CohomologyTable table;
    SurjectivityVerdict criterion;
    FinAbGroup reduction_cokernel;
    IntVector w_wu;       // total Stiefel-Whitney class of Wu, from Wu classes
    IntVector w2;         // w_2(S^2 x Wu) in the canonical basis of h^2
    bool w2_generates = false;
    SurjectivityVerdict verdict;
};

inline S2WuAnalysis s2_times_wu() {
    S2WuAnalysis a;
    a.table = kunneth_integral(sphere_table(2), wu_manifold_table());
    a.criterion = dim7_realification_surjective(a.table);
    GroupMap red = reduction_map(a.table, 2);
    a.reduction_cokernel = cokernel(red);

    SteenrodRing wu = wu_manifold_mod2();
    a.w_wu = sw_from_wu(wu, wu_classes(wu));
    // w(S^2) = 1, so w(S^2 x Wu) is the pullback of w(Wu). In the canonical
    // basis of h^2(S^2 x Wu) the first coordinate is the sphere class and the
    // second is the class from H^2(Wu; Z_2), the reduction-free Tor part.
    a.w2 = IntVector{0, a.w_wu[wu.ring.index("x2")]};
    Presentation coker(red.target.gens, stack(red.target.rels, red.matrix));
    a.w2_generates = a.reduction_cokernel == make_group(0, {2}) && !coker.is_zero(a.w2);
    if (!a.reduction_cokernel.is_trivial())
        a.verdict = {Verdict::not_surjective, "cokernel of reduction in degree 2",
                     "coker red = " + a.reduction_cokernel.str() + ", generated by w_2"};
    else
        a.verdict = {Verdict::surjective, "cokernel of reduction in degree 2", "coker red = 0"};
    return a;
}

// Products of spheres (dimension >= 2) and complex projective spaces of total
// dimension 2..7: all torsion-free.
inline std::vector<CohomologyTable> sphere_cp_products_up_to_7() {
    std::vector<CohomologyTable> parts;
    for (int n = 2; n <= 7; ++n) parts.push_back(sphere_table(n));
    for (int m = 1; m <= 3; ++m) parts.push_back(complex_projective_table(m));
    std::vector<CohomologyTable> out;
    std::function<void(std::size_t, const CohomologyTable*)> walk = [&](std::size_t from, const CohomologyTable* cur) {
        for (std::size_t i = from; i < parts.size(); ++i) {
            const int d = (cur ? cur->dimension : 0) + parts[i].dimension;
            if (d > 7) continue;
            CohomologyTable next = cur ? kunneth_product(*cur, parts[i]) : parts[i];
            out.push_back(next);
            walk(i, &next);
        }
    };
    walk(0, nullptr);
    return out;
}

// ---------------------------------------------------------------------------
// Products of spheres

namespace detail {

// Rules on sorted residues mod 8 with no factor removed.
inline std::optional<std::string> sphere_base_rule(const std::vector<int>& r) {
    using V = std::vector<int>;
    auto even = [](int x) { return x % 2 == 0; };
    const auto evens = static_cast<std::size_t>(std::count_if(r.begin(), r.end(), even));
    const std::size_t odds = r.size() - evens;
    V ev;
    for (int x : r)
        if (even(x)) ev.push_back(x);
    switch (r.size()) {
        case 1: return "single sphere";
        case 2:
            if (r == V{3, 3} || r == V{7, 7}) return "{3,3} or {7,7}";
            if (evens == 1) return "{even, odd}";
            if (evens == 2 && r != V{2, 6}) return "{even, even'} other than {2,6}";
            break;
        case 3:
            if (r == V{2, 2, 2} || r == V{6, 6, 6} || r == V{7, 7, 7}) return "{2,2,2}, {6,6,6} or {7,7,7}";
            if (evens == 2 && odds == 1 && ev != V{2, 6} && ev != V{4, 4}) return "{even, even', odd} other than {2,6,odd}, {4,4,odd}";
            break;
        case 4:
            if (odds == 1 && (ev == V{2, 2, 2} || ev == V{6, 6, 6})) return "{2,2,2,odd} or {6,6,6,odd}";
            break;
        default: break;
    }
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (!even(r[i])) continue;
        bool rest = true;
        for (std::size_t j = 0; j < r.size(); ++j)
            if (j != i && r[j] != 0 && r[j] != 4) rest = false;
        if (rest) return "{even, n_2, ..., n_l} with n_i = 0 or 4";
    }
    return std::nullopt;
}

}  // namespace detail

// Sufficient conditions only: unmatched tuples are undetermined.
inline SurjectivityVerdict sphere_tuple_scsq(const std::vector<int>& dims) {
    if (dims.empty()) throw StructuralError("empty sphere tuple");
    std::vector<int> r;
    for (int n : dims) {
        if (n < 1) throw StructuralError("sphere dimensions must be positive");
        r.push_back(n % 8);
    }
    std::sort(r.begin(), r.end());
    const auto zeros = static_cast<std::size_t>(std::count(r.begin(), r.end(), 0));
    // Factors = 0 mod 8 may be split off (they sort first).
    for (std::size_t k = 0; k <= zeros && k < r.size(); ++k) {
        std::vector<int> rest(r.begin() + static_cast<std::ptrdiff_t>(k), r.end());
        if (auto rule = detail::sphere_base_rule(rest)) {
            std::string s = *rule;
            if (k) s += " plus " + std::to_string(k) + " factor(s) = 0 mod 8";
            return {Verdict::surjective, s, ""};
        }
    }
    return {Verdict::undetermined, "", "no listed residue pattern matches"};
}

// ---------------------------------------------------------------------------
// Product rules

// For equal-rank factors alpha_O is onto for the product iff it is onto for
// both and h^-(K) vanishes for at least one of them.
inline SurjectivityVerdict product_combinator(const SurjectivityVerdict& v1, const SurjectivityVerdict& v2,
                                              bool hminus1_zero, bool hminus2_zero) {
    const std::string rule = "equal-rank product: both onto and one h^-(K) = 0";
    if (v1.verdict == Verdict::not_surjective || v2.verdict == Verdict::not_surjective)
        return {Verdict::not_surjective, rule, "a factor is not onto"};
    if (v1.verdict == Verdict::undetermined || v2.verdict == Verdict::undetermined)
        return {Verdict::undetermined, "", "a factor is undetermined"};
    if (hminus1_zero || hminus2_zero) return {Verdict::surjective, rule, ""};
    return {Verdict::not_surjective, rule, "h^-(K) nonzero on both factors"};
}

// Product with S^{8n} keeps alpha_O onto; nothing is claimed otherwise.
inline SurjectivityVerdict s8n_combinator(const SurjectivityVerdict& v) {
    if (v.surjective()) return {Verdict::surjective, "product with S^{8n}", ""};
    return {Verdict::undetermined, "", "product with S^{8n} only preserves surjectivity"};
}

// ---------------------------------------------------------------------------
// K-rings with conjugation, for h^-

namespace detail {

// Z[x]/(x^{m+1}) with conjugation x -> tx (a polynomial without constant term).
inline InvolutiveRing truncated_polynomial_ring(int m, const std::vector<Integer>& tx) {
    const auto n = static_cast<std::size_t>(m) + 1;
    auto mul = [&](const std::vector<Integer>& a, const std::vector<Integer>& b) {
        std::vector<Integer> c(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; i + j < n; ++j) c[i + j] += a[i] * b[j];
        return c;
    };
    InvolutiveRing r;
    IntMatrix t(n, n);
    std::vector<Integer> pw(n);
    pw[0] = 1;
    std::vector<Integer> x = tx;
    x.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) t(j, k) = pw[k];
        pw = mul(pw, x);
    }
    r.module = InvolutiveModule::free(t);
    r.mult.assign(n * n, IntVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; i + j < n; ++j) r.mult[i * n + j][i + j] = 1;
    r.unit = IntVector(n);
    r.unit[0] = 1;
    return r;
}

}  // namespace detail

// K(S^n): Z[x]/(x^2) for n even, with conjugation (-1)^{n/2} on x; Z for n odd
// (reduced K^0 vanishes).
inline InvolutiveRing k_ring_sphere(int n) {
    if (n < 1) throw StructuralError("sphere dimension must be positive");
    if (n % 2 == 1) return detail::truncated_polynomial_ring(0, {});
    return detail::truncated_polynomial_ring(1, {0, (n / 2) % 2 == 0 ? 1 : -1});
}

// K(CP^m) = Z[x]/(x^{m+1}), x = H - 1, conjugation H -> H^{-1}, so
// x -> (1 + x)^{-1} - 1 = -x + x^2 - ...
inline InvolutiveRing k_ring_complex_projective(int m) {
    std::vector<Integer> tx(static_cast<std::size_t>(m) + 1);
    for (int k = 1; k <= m; ++k) tx[static_cast<std::size_t>(k)] = k % 2 == 0 ? 1 : -1;
    return detail::truncated_polynomial_ring(m, tx);
}

// K(HP^m) = Z[z]/(z^{m+1}) with z the underlying complex class of the
// quaternionic line minus 2, which is self-conjugate.
inline InvolutiveRing k_ring_quaternionic_projective(int m) {
    std::vector<Integer> tx(static_cast<std::size_t>(m) + 1);
    if (m >= 1) tx[1] = 1;
    return detail::truncated_polynomial_ring(m, tx);
}

// h^-(K(M)) = 0 is guaranteed when the cohomology sits in degrees = 0 mod 4;
// nullopt when the rule does not apply.
inline std::optional<bool> hminus_zero_by_degrees(const CohomologyTable& c) {
    for (int k = 1; k <= c.dimension; ++k)
        if (k % 4 != 0 && !c.H(k).is_trivial()) return std::nullopt;
    return true;
}

}  // namespace kring
