#pragma once

// Atiyah-Hirzebruch pages for K and KO from a cohomology table: E2, the KO
// d2, E3, comparison maps t/c/r on E2, and assembly of a diagonal up to
// extensions. Higher differentials are never computed; callers assert them.

#include "kring/exactlin.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace kring {

enum class Theory { K, KO };

inline std::string to_string(Theory t) { return t == Theory::K ? "K" : "KO"; }

inline int mod_nonneg(int a, int m) { return ((a % m) + m) % m; }

// How E^q(pt) enters E2: as H^p(M;Z), as h^p = H^p(M;Z_2), or not at all.
enum class RowKind { zero, integral, mod2 };

// Coefficients E^{-i}(pt) for i in [0, period).
struct CoefficientRow {
    Theory theory;
    std::vector<RowKind> period;

    RowKind kind(int q) const { return period[mod_nonneg(-q, static_cast<int>(period.size()))]; }
    FinAbGroup at(int q) const {
        switch (kind(q)) {
            case RowKind::integral: return make_group(1);
            case RowKind::mod2: return make_group(0, {2});
            default: return {};
        }
    }
};

inline CoefficientRow coefficient_row(Theory t) {
    using R = RowKind;
    if (t == Theory::K) return {t, {R::integral, R::zero}};
    return {t, {R::integral, R::mod2, R::mod2, R::zero, R::integral, R::zero, R::zero, R::zero}};
}

// Integral cohomology H^0..H^n and Sq^2 on mod-2 cohomology.
//
// The mod-2 basis of h^p is fixed by universal coefficients: reductions of the
// free generators of H^p, then reductions of the even invariant factors of
// H^p, then one class per even invariant factor of H^{p+1} (the Tor part).
// With that convention the reduction map is determined by the integral data.
//
// sq2[p] maps h^p to h^{p+2} on row vectors; nullopt means Sq^2 = 0 there,
// which keeps huge torsion-free tables (sphere products) matrix-free.
struct CohomologyTable {
    std::string name;
    int dimension = 0;
    std::vector<FinAbGroup> integral;
    std::vector<std::optional<IntMatrix>> sq2;

    const FinAbGroup& H(int p) const {
        static const FinAbGroup zero;
        return p < 0 || p > dimension ? zero : integral[static_cast<std::size_t>(p)];
    }
    static std::size_t even_factors(const FinAbGroup& g) {
        std::size_t k = 0;
        for (const auto& d : g.torsion)
            if (d % 2 == 0) ++k;
        return k;
    }
    std::size_t mod2_dim(int p) const {
        if (p < 0 || p > dimension) return 0;
        return H(p).free_rank + even_factors(H(p)) + even_factors(H(p + 1));
    }
    Presentation integral_presentation(int p) const { return Presentation::of(H(p)); }
    Presentation mod2_presentation(int p) const {
        return Presentation::cyclic(std::vector<Integer>(mod2_dim(p), Integer(2)));
    }

    // Reduction H^p -> h^p in the canonical bases.
    IntMatrix reduction(int p) const {
        const FinAbGroup& g = H(p);
        IntMatrix m(g.generator_count(), mod2_dim(p));
        std::size_t col = 0;
        for (std::size_t i = 0; i < g.free_rank; ++i) m(i, col++) = 1;
        for (std::size_t i = 0; i < g.torsion.size(); ++i)
            if (g.torsion[i] % 2 == 0) m(g.free_rank + i, col++) = 1;
        return m;
    }
    IntMatrix steenrod2(int p) const {
        const auto& s = p >= 0 && p <= dimension ? sq2[static_cast<std::size_t>(p)] : std::nullopt;
        return s ? *s : IntMatrix(mod2_dim(p), mod2_dim(p + 2));
    }
    bool sq2_vanishes(int p) const {
        if (p < 0 || p > dimension) return true;
        const auto& s = sq2[static_cast<std::size_t>(p)];
        if (!s) return true;
        for (std::size_t i = 0; i < s->rows(); ++i)
            for (std::size_t j = 0; j < s->cols(); ++j)
                if ((*s)(i, j) % 2 != 0) return false;
        return true;
    }

    void validate() const {
        if (dimension < 0) throw StructuralError(name + ": negative dimension");
        const auto n = static_cast<std::size_t>(dimension) + 1;
        if (integral.size() != n || sq2.size() != n)
            throw StructuralError(name + ": expected " + std::to_string(n) + " degrees");
        for (int p = 0; p <= dimension; ++p) {
            const auto& s = sq2[static_cast<std::size_t>(p)];
            if (s && (s->rows() != mod2_dim(p) || s->cols() != mod2_dim(p + 2)))
                throw StructuralError(name + ": Sq2 from degree " + std::to_string(p) + " has the wrong shape");
        }
    }

    static CohomologyTable point() { return {"point", 0, {make_group(1)}, {std::nullopt}}; }
};

// S^n with its (zero) Sq^2 written out.
inline CohomologyTable sphere_table(int n) {
    if (n < 1) throw StructuralError("sphere dimension must be positive");
    CohomologyTable t{"S^" + std::to_string(n), n, std::vector<FinAbGroup>(n + 1), {}};
    t.integral[0] = t.integral[static_cast<std::size_t>(n)] = make_group(1);
    for (int p = 0; p <= n; ++p) t.sq2.emplace_back(IntMatrix(t.mod2_dim(p), t.mod2_dim(p + 2)));
    return t;
}

// CP^m: Z in even degrees, Sq^2 x^k = k x^{k+1}.
inline CohomologyTable complex_projective_table(int m) {
    if (m < 1) throw StructuralError("projective dimension must be positive");
    CohomologyTable t{"CP^" + std::to_string(m), 2 * m, std::vector<FinAbGroup>(static_cast<std::size_t>(2 * m) + 1), {}};
    for (int k = 0; k <= m; ++k) t.integral[static_cast<std::size_t>(2 * k)] = make_group(1);
    for (int p = 0; p <= 2 * m; ++p) {
        IntMatrix s(t.mod2_dim(p), t.mod2_dim(p + 2));
        if (p % 2 == 0 && p + 2 <= 2 * m) s(0, 0) = (p / 2) % 2;
        t.sq2.emplace_back(std::move(s));
    }
    return t;
}

// Künneth for torsion-free tables. On torsion-free cohomology Sq^1 = 0, so the
// Cartan formula reduces to Sq^2(x y) = Sq^2(x) y + x Sq^2(y). The product
// basis in degree k lists pairs (i, j) with i + j = k by increasing i, each
// block in row-major order.
inline CohomologyTable kunneth_product(const CohomologyTable& a, const CohomologyTable& b) {
    for (const auto* t : {&a, &b})
        for (const auto& g : t->integral)
            if (!g.is_free()) throw StructuralError("Künneth product needs torsion-free tables");
    CohomologyTable t;
    t.name = a.name + " x " + b.name;
    t.dimension = a.dimension + b.dimension;
    for (int k = 0; k <= t.dimension; ++k) {
        std::size_t r = 0;
        for (int i = 0; i <= k; ++i) r += a.H(i).free_rank * b.H(k - i).free_rank;
        t.integral.push_back(make_group(r));
    }
    auto offset = [&](int k, int i) {
        std::size_t o = 0;
        for (int j = 0; j < i; ++j) o += a.H(j).free_rank * b.H(k - j).free_rank;
        return o;
    };
    for (int k = 0; k <= t.dimension; ++k) {
        bool zero = true;
        for (int i = 0; i <= k; ++i) zero = zero && a.sq2_vanishes(i) && b.sq2_vanishes(k - i);
        if (zero) {
            t.sq2.emplace_back(std::nullopt);
            continue;
        }
        IntMatrix m(t.mod2_dim(k), t.mod2_dim(k + 2));
        for (int i = 0; i <= k; ++i) {
            const std::size_t ra = a.H(i).free_rank, rb = b.H(k - i).free_rank;
            if (ra == 0 || rb == 0) continue;
            const std::size_t from = offset(k, i);
            // Sq2 on the left factor lands in block (i + 2, k - i).
            if (!a.sq2_vanishes(i)) {
                IntMatrix s = kronecker(a.steenrod2(i), IntMatrix::identity(rb));
                const std::size_t to = offset(k + 2, i + 2);
                for (std::size_t x = 0; x < s.rows(); ++x)
                    for (std::size_t y = 0; y < s.cols(); ++y) m(from + x, to + y) += s(x, y);
            }
            if (!b.sq2_vanishes(k - i)) {
                IntMatrix s = kronecker(IntMatrix::identity(ra), b.steenrod2(k - i));
                const std::size_t to = offset(k + 2, i);
                for (std::size_t x = 0; x < s.rows(); ++x)
                    for (std::size_t y = 0; y < s.cols(); ++y) m(from + x, to + y) += s(x, y);
            }
        }
        for (std::size_t x = 0; x < m.rows(); ++x)
            for (std::size_t y = 0; y < m.cols(); ++y) m(x, y) = mod_floor(m(x, y), Integer(2));
        t.sq2.emplace_back(std::move(m));
    }
    t.validate();
    return t;
}

// The product of spheres by ranks alone: H^k is free of rank equal to the
// number of sub-multisets summing to k, and Sq^2 vanishes (it does on every
// sphere, hence on the product by Cartan). No matrices are stored.
inline CohomologyTable sphere_product_table(const std::vector<int>& dims) {
    std::vector<Integer> poly{1};
    std::string name;
    for (int n : dims) {
        if (n < 1) throw StructuralError("sphere dimension must be positive");
        std::vector<Integer> next(poly.size() + static_cast<std::size_t>(n), Integer(0));
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i] += poly[i];
            next[i + static_cast<std::size_t>(n)] += poly[i];
        }
        poly = std::move(next);
        name += (name.empty() ? "S^" : " x S^") + std::to_string(n);
    }
    CohomologyTable t{name.empty() ? "point" : name, static_cast<int>(poly.size()) - 1, {}, {}};
    for (const auto& c : poly) {
        t.integral.push_back(make_group(c.convert_to<std::size_t>()));
        t.sq2.emplace_back(std::nullopt);
    }
    return t;
}

// ---------------------------------------------------------------------------
// Pages

inline std::size_t e2_generators(const CohomologyTable& c, Theory th, int p, int q) {
    switch (coefficient_row(th).kind(q)) {
        case RowKind::integral: return c.H(p).generator_count();
        case RowKind::mod2: return c.mod2_dim(p);
        default: return 0;
    }
}

inline FinAbGroup e2_group(const CohomologyTable& c, Theory th, int p, int q) {
    switch (coefficient_row(th).kind(q)) {
        case RowKind::integral: return c.H(p);
        case RowKind::mod2: return FinAbGroup{0, std::vector<Integer>(c.mod2_dim(p), Integer(2))};
        default: return {};
    }
}

inline Presentation e2_presentation(const CohomologyTable& c, Theory th, int p, int q) {
    switch (coefficient_row(th).kind(q)) {
        case RowKind::integral: return c.integral_presentation(p);
        case RowKind::mod2: return c.mod2_presentation(p);
        default: return Presentation::free(0);
    }
}

struct PageEntry {
    FinAbGroup group;
    // Index of the d2-cycles in the E2 entry; 0 when infinite. 1 on E2.
    Integer cycle_index = 1;
};

// Grid over p in [0, n] and q in [q_min, 0]. E2 entries are read off the
// table on demand, so sphere products of high dimension stay cheap; later
// pages store only the entries a differential changed. Differentials are
// stored where nonzero, keyed by source (p, q), acting on E2 presentations.
struct Page {
    std::shared_ptr<const CohomologyTable> table;
    Theory theory = Theory::KO;
    int index = 2;
    int dimension = 0, q_min = 0;
    std::map<std::pair<int, int>, PageEntry> changed;
    std::map<std::pair<int, int>, IntMatrix> differentials;

    PageEntry at(int p, int q) const {
        auto it = changed.find({p, q});
        if (it != changed.end()) return it->second;
        return {e2_group(*table, theory, p, q), 1};
    }
    FinAbGroup group(int p, int q) const { return at(p, q).group; }
    bool is_zero(int p, int q) const {
        auto it = changed.find({p, q});
        if (it != changed.end()) return it->second.group.is_trivial();
        return e2_generators(*table, theory, p, q) == 0;
    }
};

inline Page build_e2(const CohomologyTable& c, Theory th, std::optional<int> q_min = std::nullopt) {
    c.validate();
    Page page;
    page.table = std::make_shared<const CohomologyTable>(c);
    page.theory = th;
    page.dimension = c.dimension;
    page.q_min = q_min.value_or(-c.dimension);
    return page;
}

// The KO d2: Sq^2 after reduction on rows q = 0 mod 8, Sq^2 on rows
// q = -1 mod 8, zero elsewhere. nullopt when the map is zero.
inline std::optional<IntMatrix> d2_ko_matrix(const CohomologyTable& c, int p, int q) {
    const int r = mod_nonneg(q, 8);
    if (r != 0 && r != 7) return std::nullopt;
    if (c.sq2_vanishes(p)) return std::nullopt;
    IntMatrix m = r == 0 ? c.reduction(p) * c.steenrod2(p) : c.steenrod2(p);
    if (m.is_zero()) return std::nullopt;
    return m;
}

// E3 from E2 for KO: every entry becomes ker(d2 out) / im(d2 in).
inline Page d2_ko(const Page& e2) {
    if (e2.theory != Theory::KO || e2.index != 2) throw StructuralError("d2_ko needs a KO E2 page");
    const CohomologyTable& c = *e2.table;
    Page out = e2;
    out.index = 3;
    out.differentials.clear();
    for (int q = 0; q >= e2.q_min; --q)
        for (int p = 0; p <= e2.dimension; ++p) {
            auto d_out = d2_ko_matrix(c, p, q);
            auto d_in = d2_ko_matrix(c, p - 2, q + 1);
            if (d_out) out.differentials.emplace(std::make_pair(p, q), *d_out);
            if (!d_out && !d_in) continue;
            PageEntry entry;
            Presentation here = e2_presentation(c, Theory::KO, p, q);
            IntMatrix cycles = IntMatrix::identity(here.gens);
            if (d_out) {
                GroupMap d(here, e2_presentation(c, Theory::KO, p + 2, q - 1), *d_out);
                d.require_well_formed();
                cycles = d.kernel_lattice();
                entry.cycle_index = image(d).order();
            }
            IntMatrix boundaries = here.rels;
            if (d_in) {
                GroupMap d(e2_presentation(c, Theory::KO, p - 2, q + 1), here, *d_in);
                d.require_well_formed();
                boundaries = d.image_lattice();
            }
            entry.group = subquotient(cycles, boundaries, here.gens);
            out.changed.emplace(std::make_pair(p, q), std::move(entry));
        }
    return out;
}

// Every composite of two consecutive stored differentials vanishes.
inline bool differentials_square_to_zero(const Page& page) {
    const CohomologyTable& c = *page.table;
    for (const auto& [pq, d] : page.differentials) {
        const auto [p, q] = pq;
        auto next = page.differentials.find({p + 2, q - 1});
        if (next == page.differentials.end()) continue;
        GroupMap dd(e2_presentation(c, page.theory, p, q), e2_presentation(c, page.theory, p + 4, q - 2),
                    d * next->second);
        if (!dd.is_zero()) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Comparison maps on E2, induced by the maps on coefficients.

enum class Comparison { t, c, r };

inline Theory comparison_source(Comparison m) { return m == Comparison::c ? Theory::KO : Theory::K; }
inline Theory comparison_target(Comparison m) { return m == Comparison::r ? Theory::KO : Theory::K; }

inline GroupMap comparison_e2(Comparison m, const CohomologyTable& c, int p, int q) {
    Presentation src = e2_presentation(c, comparison_source(m), p, q);
    Presentation dst = e2_presentation(c, comparison_target(m), p, q);
    const std::size_t n = c.H(p).generator_count();
    IntMatrix mat(src.gens, dst.gens);
    switch (m) {
        case Comparison::t:
            if (mod_nonneg(q, 4) == 0) mat = IntMatrix::identity(n);
            else if (mod_nonneg(q, 4) == 2) mat = Integer(-1) * IntMatrix::identity(n);
            break;
        case Comparison::c:
            if (mod_nonneg(q, 8) == 0) mat = IntMatrix::identity(n);
            else if (mod_nonneg(q, 8) == 4) mat = Integer(2) * IntMatrix::identity(n);
            break;
        case Comparison::r:
            if (mod_nonneg(q, 8) == 0) mat = Integer(2) * IntMatrix::identity(n);
            else if (mod_nonneg(q, 8) == 4) mat = IntMatrix::identity(n);
            else if (mod_nonneg(q, 8) == 6) mat = c.reduction(p);
            break;
    }
    GroupMap g(src, dst, mat);
    g.require_well_formed();
    return g;
}

// The comparison map commutes with d2 at (p, q). The K-theory d2 is zero
// (its image would be torsion in a page that d2 cannot reach).
inline bool comparison_commutes_with_d2(Comparison m, const CohomologyTable& c, int p, int q) {
    auto d2 = [&](Theory th, int pp, int qq) -> IntMatrix {
        auto d = th == Theory::KO ? d2_ko_matrix(c, pp, qq) : std::nullopt;
        return d ? *d : IntMatrix(e2_presentation(c, th, pp, qq).gens, e2_presentation(c, th, pp + 2, qq - 1).gens);
    };
    IntMatrix lhs = d2(comparison_source(m), p, q) * comparison_e2(m, c, p + 2, q - 1).matrix;
    IntMatrix rhs = comparison_e2(m, c, p, q).matrix * d2(comparison_target(m), p, q);
    Presentation dst = e2_presentation(c, comparison_target(m), p + 2, q - 1);
    return GroupMap(e2_presentation(c, comparison_source(m), p, q), dst, lhs - rhs).is_zero();
}

// ---------------------------------------------------------------------------
// Assembly of a diagonal from its graded pieces

namespace detail {

inline std::string group_key(const FinAbGroup& g) { return g.str(); }

}  // namespace detail

inline constexpr std::size_t kExtensionLimit = 1u << 16;

// Every group G with a subgroup S and G/S = Q. An extension is fixed by
// images s_i in S / m_i S of m_i e_i for the torsion generators e_i of Q, so
// G is presented by S, the generators of Q, and the relations m_i e_i = s_i.
inline std::vector<FinAbGroup> extensions(const FinAbGroup& q, const FinAbGroup& s) {
    const std::size_t ns = s.generator_count(), nq = q.generator_count();
    std::vector<FinAbGroup> out;
    // Choices per (torsion factor of Q, generator of S): representatives of
    // the cyclic factor of S modulo m.
    std::vector<Integer> range;
    for (const auto& m : q.torsion)
        for (std::size_t j = 0; j < ns; ++j)
            range.push_back(j < s.free_rank ? m : Integer(gcd(m, s.torsion[j - s.free_rank])));
    Integer total = 1;
    for (const auto& r : range) total *= r;
    if (total > kExtensionLimit) throw StructuralError("too many extensions to enumerate: " + total.str());

    Presentation ps = Presentation::of(s);
    std::set<std::string> seen;
    std::vector<Integer> choice(range.size(), Integer(0));
    for (;;) {
        IntMatrix rels(0, ns + nq);
        for (std::size_t i = 0; i < ps.rels.rows(); ++i) {
            IntVector r(ns + nq);
            for (std::size_t j = 0; j < ns; ++j) r[j] = ps.rels(i, j);
            rels.append_row(r);
        }
        for (std::size_t k = 0; k < q.torsion.size(); ++k) {
            IntVector r(ns + nq);
            r[ns + q.free_rank + k] = q.torsion[k];
            for (std::size_t j = 0; j < ns; ++j) r[j] = -choice[k * ns + j];
            rels.append_row(r);
        }
        FinAbGroup g = quotient_presentation(ns + nq, rels);
        if (seen.insert(detail::group_key(g)).second) out.push_back(g);
        std::size_t i = 0;
        while (i < choice.size() && ++choice[i] == range[i]) choice[i++] = 0;
        if (i == choice.size()) break;
    }
    return out;
}

// Graded pieces of the diagonal p + q = degree, and every group filtered with
// those pieces. Only the caller knows that the page has stabilized, so the
// justification is required and carried along.
struct DiagonalAssembly {
    int degree = 0;
    std::string collapse_justification;
    std::vector<std::pair<int, FinAbGroup>> pieces;  // nonzero pieces by increasing p
    std::vector<FinAbGroup> candidates;

    bool ambiguous() const { return candidates.size() != 1; }
    std::optional<FinAbGroup> group() const {
        if (ambiguous()) return std::nullopt;
        return candidates.front();
    }
    bool admits(const FinAbGroup& g) const {
        for (const auto& c : candidates)
            if (c == g) return true;
        return false;
    }
};

inline DiagonalAssembly diagonal_assembly(const Page& page, int degree, bool reduced,
                                          const std::string& collapse_justification) {
    if (collapse_justification.empty())
        throw StructuralError("diagonal assembly needs an explicit reason why the page has stabilized");
    DiagonalAssembly a;
    a.degree = degree;
    a.collapse_justification = collapse_justification;
    for (int p = reduced ? 1 : 0; p <= page.dimension; ++p) {
        const int q = degree - p;
        if (q > 0) continue;
        // E2 is known everywhere; later pages only on the computed rows.
        if (q < page.q_min && page.index > 2) throw StructuralError("diagonal leaves the computed rows of the page");
        if (!page.is_zero(p, q)) a.pieces.emplace_back(p, page.group(p, q));
    }
    // Build from the deepest filtration level up: F^p / F^{p+1} = piece p.
    std::vector<FinAbGroup> current{FinAbGroup{}};
    for (auto it = a.pieces.rbegin(); it != a.pieces.rend(); ++it) {
        std::vector<FinAbGroup> next;
        std::set<std::string> seen;
        for (const auto& s : current)
            for (auto& g : extensions(it->second, s))
                if (seen.insert(detail::group_key(g)).second) next.push_back(std::move(g));
        current = std::move(next);
    }
    std::sort(current.begin(), current.end(), [](const FinAbGroup& x, const FinAbGroup& y) {
        return detail::group_key(x) < detail::group_key(y);
    });
    a.candidates = std::move(current);
    return a;
}

// A resolution of an extension problem that comes from outside the spectral
// sequence, for instance an equivariance argument.
struct ExternalFact {
    std::string name;
    FinAbGroup group;
};

inline FinAbGroup resolve(const DiagonalAssembly& a, const ExternalFact& fact) {
    if (!a.admits(fact.group))
        throw StructuralError("external fact '" + fact.name + "' names " + fact.group.str() +
                              ", which is not a candidate assembly");
    return fact.group;
}

// ---------------------------------------------------------------------------
// Products of spheres

// Reduced KO vanishes exactly for these residue patterns mod 8.
inline bool sphere_ko_trivial_by_residues(std::vector<int> dims) {
    for (int& n : dims) n = mod_nonneg(n, 8);
    std::sort(dims.begin(), dims.end());
    using V = std::vector<int>;
    switch (dims.size()) {
        case 0: return true;
        case 1: return dims[0] == 3 || dims[0] == 5 || dims[0] == 6 || dims[0] == 7;
        case 2: return dims == V{3, 3} || dims == V{5, 6} || dims == V{6, 7} || dims == V{7, 7};
        case 3: return dims == V{7, 7, 7};
        default: return false;
    }
}

// Reduced KO vanishes iff the zero diagonal of E3 (= E-infinity, as every
// differential vanishes on a sphere product) is zero in positive filtration.
inline bool sphere_ko_trivial_by_ahss(const std::vector<int>& dims) {
    Page e3 = d2_ko(build_e2(sphere_product_table(dims), Theory::KO));
    for (int p = 1; p <= e3.dimension; ++p)
        if (!e3.is_zero(p, -p)) return false;
    return true;
}

inline bool sphere_ko_trivial(const std::vector<int>& dims) {
    const bool a = sphere_ko_trivial_by_residues(dims), b = sphere_ko_trivial_by_ahss(dims);
    if (a != b) throw StructuralError("sphere KO triviality: residue rule and spectral sequence disagree");
    return a;
}

// Hypotheses under which reduced realification K -> KO is onto, given that
// no differential touches the zero diagonals: H^k = 0 for positive
// k = 0 mod 8, and reduction H^k -> h^k onto for k = 2 mod 8.
inline bool realification_hypotheses_hold(const CohomologyTable& c) {
    for (int k = 1; k <= c.dimension; ++k) {
        if (k % 8 == 0 && !c.H(k).is_trivial()) return false;
        if (k % 8 == 2 && CohomologyTable::even_factors(c.H(k + 1)) != 0) return false;
    }
    return true;
}

// Sufficient condition: no nonempty sub-multiset sums to 0 mod 8. Cross-checked
// against the hypotheses above on the Künneth table.
inline bool sphere_realification_surjective(const std::vector<int>& dims) {
    std::vector<bool> reach(8, false);
    reach[0] = true;
    bool zero_sum = false;
    for (int n : dims) {
        std::vector<bool> next = reach;
        for (int r = 0; r < 8; ++r)
            if (reach[r]) {
                const int s = mod_nonneg(r + n, 8);
                if (s == 0) zero_sum = true;
                next[s] = true;
            }
        reach = std::move(next);
    }
    const bool by_sums = !zero_sum;
    if (by_sums != realification_hypotheses_hold(sphere_product_table(dims)))
        throw StructuralError("sphere realification: subset sums and cohomology disagree");
    return by_sums;
}

}  // namespace kring
