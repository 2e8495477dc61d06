#pragma once

// The complex and real K-rings of B^13 as finite ring models with the maps
// c, r, t, c', q between them, the quadratic map phi: K -> KO, the image of
// alpha_O, the Pontryagin scan singling out w, and a consistency check of the
// Bott sequence for B^13.
//
// K(B^13) is computed from representation rings; KO(B^13) is input data and is
// only checked for consistency with K(B^13) and the structure identities.

#include "kring/b13.hpp"
#include "kring/quotient.hpp"

#include <array>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace kring {

// Ungraded models reuse the graded ring with everything in degree 0.
using FiniteRingModel = TruncGradedRing;

inline bool maps_equal(const GroupMap& f, const GroupMap& g) {
    if (f.matrix.rows() != g.matrix.rows() || f.matrix.cols() != g.matrix.cols()) return false;
    for (std::size_t i = 0; i < f.matrix.rows(); ++i)
        if (!f.target.equal(f.matrix.row(i), g.matrix.row(i))) return false;
    return true;
}

inline GroupMap map_sum(const GroupMap& f, const GroupMap& g) { return GroupMap(f.source, f.target, f.matrix + g.matrix); }

// ---------------------------------------------------------------------------
// K(B^13)

struct KRingModel {
    LaurentIdealPresentation presentation;  // units already eliminated; one variable b = x^2
    AdditiveStructure quotient;
    std::vector<Character> basis;  // 1, u, y, u^3, u^4 with u = b - 1, y = b + b^-1 - 2
    GroupMap basis_change;         // basis coordinates -> canonical quotient coordinates
    FiniteRingModel ring;
    GroupMap t;

    IntVector from_character(const Character& c) const {
        IntVector z = quotient.coordinates(c);
        auto w = solve_left(stack(basis_change.matrix, basis_change.target.rels), z);
        if (!w) throw StructuralError("element outside the span of the K(B^13) basis");
        w->resize(ring.size());
        return ring.reduce(*w);
    }
    Character to_character(const IntVector& x) const {
        Character c(presentation.rank());
        for (std::size_t i = 0; i < x.size(); ++i) c += x[i] * basis[i];
        return c;
    }
    Character line(int k) const { return Character::variable(presentation.rank(), 0, k); }
};

inline KRingModel build_k_model(int window = kDefaultWindow) {
    KRingModel k;
    k.presentation = eliminate_units(berger_presentation());
    k.quotient = additive_structure(k.presentation, window);
    const LaurentIdealPresentation& p = k.presentation;
    const Character b = p.variable("x^2"), one = p.constant(1);
    const Character u = b - one, y = b + conjugate(b) - p.constant(2);
    k.basis = {one, u, y, u.pow(3), u.pow(4)};
    const std::vector<Integer> orders{0, 0, 0, 5, 5};
    k.basis_change = basis_map(k.quotient, k.basis, orders);
    if (!is_basis(k.quotient, k.basis, orders))
        throw StructuralError("1, u, y, u^3, u^4 is not a basis of the computed K(B^13)");

    FiniteRingModel& r = k.ring;
    r.name = "K(B^13)";
    r.names = {"1", "u", "y", "u^3", "u^4"};
    r.degree.assign(5, 0);
    r.order = orders;
    r.mult.resize(25);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) r.mult[i * 5 + j] = k.from_character(k.basis[i] * k.basis[j]);
    if (std::string v = r.violation(); !v.empty()) throw StructuralError("K(B^13) model: " + v);

    IntMatrix t(0, 5);
    for (const auto& e : k.basis) t.append_row(k.from_character(conjugate(e)));
    k.t = GroupMap(Presentation::cyclic(r.order), Presentation::cyclic(r.order), t);
    return k;
}

// Z[u, y] modulo the displayed generating set of relations. Not minimal.
inline LaurentIdealPresentation displayed_k_presentation() {
    LaurentIdealPresentation p;
    p.names = {"u", "y"};
    p.invertible = {false, false};
    const Character u = p.variable("u"), y = p.variable("y");
    const Integer five = 5;
    p.relations = {five * u.pow(3), five * u.pow(4), u.pow(5),     y.pow(3), u * y.pow(2),
                   u.pow(3) * y,    y.pow(2) - u.pow(4), y - u.pow(2) + u.pow(3) - u.pow(4),
                   u * y - u.pow(3) + u.pow(4), u.pow(2) * y - u.pow(4)};
    return p;
}

// A polynomial in u, y evaluated in the K model.
inline IntVector evaluate_uy(const FiniteRingModel& k, const Character& poly) {
    IntVector out = k.zero();
    for (const auto& [e, c] : poly.terms()) {
        IntVector m = k.one();
        for (int a = 0; a < e[0]; ++a) m = k.mul(m, k["u"]);
        for (int a = 0; a < e[1]; ++a) m = k.mul(m, k["y"]);
        out = k.add(out, k.scale(c, m));
    }
    return out;
}

// Structure constants of the displayed presentation in the same basis; equal
// tables mean the two rings agree under u -> b - 1, y -> b + b^-1 - 2.
inline FiniteRingModel displayed_k_model(int window = 8) {
    LaurentIdealPresentation p = displayed_k_presentation();
    AdditiveStructure s = additive_structure(p, window);
    const Character u = p.variable("u"), y = p.variable("y");
    std::vector<Character> basis{p.constant(1), u, y, u.pow(3), u.pow(4)};
    const std::vector<Integer> orders{0, 0, 0, 5, 5};
    GroupMap f = basis_map(s, basis, orders);
    if (!is_basis(s, basis, orders)) throw StructuralError("1, u, y, u^3, u^4 is not a basis of the displayed ring");
    FiniteRingModel r;
    r.name = "Z[u,y]/(displayed)";
    r.names = {"1", "u", "y", "u^3", "u^4"};
    r.degree.assign(5, 0);
    r.order = orders;
    r.mult.resize(25);
    IntMatrix a = stack(f.matrix, f.target.rels);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            auto w = solve_left(a, s.coordinates(basis[i] * basis[j]));
            if (!w) throw StructuralError("product outside the basis span");
            w->resize(5);
            r.mult[i * 5 + j] = r.reduce(*w);
        }
    return r;
}

// ---------------------------------------------------------------------------
// KO(B^13), KSp(B^13) and the maps

inline FiniteRingModel build_ko_model() {
    FiniteRingModel r = monomial_ring("KO(B^13)", {"y'", "w"}, {0, 0},
                                      {{{0, 0}, 0}, {{1, 0}, 0}, {{2, 0}, 5}, {{0, 1}, 2}});
    if (std::string v = r.violation(); !v.empty()) throw StructuralError("KO(B^13) model: " + v);
    return r;
}

struct BergerModels {
    KRingModel k;
    FiniteRingModel ko;
    GroupMap c, r, t, t_ko;  // c: KO -> K, r: K -> KO, t on K, t on KO (identity)
    // KSp as the image of c' inside K: generators q(1), q(u) and 2q(u^3),
    // whose complexifications are 2, y and u^4.
    std::vector<std::string> ksp_names;
    Presentation ksp;
    GroupMap c_sp, q;  // c': KSp -> K, q: K -> KSp

    const FiniteRingModel& K() const { return k.ring; }
    bool in_image_of_r(const IntVector& x) const { return in_row_span(r.image_lattice(), x); }
};

inline BergerModels build_berger_models(int window = kDefaultWindow) {
    BergerModels m;
    m.k = build_k_model(window);
    m.ko = build_ko_model();
    const FiniteRingModel& K = m.k.ring;
    const FiniteRingModel& KO = m.ko;
    const Presentation pk = Presentation::cyclic(K.order), pko = Presentation::cyclic(KO.order);
    m.t = m.k.t;
    m.t_ko = GroupMap::scalar(pko, 1);

    // Basis order 1, y', y'^2, w; c(y') = y and c(w) = 0.
    const IntVector y = K["y"];
    const IntMatrix c = IntMatrix::from_rows({K.one(), y, K.mul(y, y), K.zero()}, K.size());
    m.c = GroupMap(pko, pk, c);

    IntMatrix r(0, KO.size());
    r.append_row(KO.scale(2, KO.one()));
    r.append_row(KO["y'"]);
    r.append_row(KO.scale(2, KO["y'"]));
    r.append_row(KO.scale(3, KO["y'^2"]));
    r.append_row(KO.scale(2, KO["y'^2"]));
    m.r = GroupMap(pk, pko, r);

    m.ksp_names = {"q(1)", "q(u)", "2q(u^3)"};
    m.ksp = Presentation::cyclic({0, 0, 5});
    IntMatrix csp(0, K.size());
    csp.append_row(K.scale(2, K.one()));
    csp.append_row(K["y"]);
    csp.append_row(K["u^4"]);
    m.c_sp = GroupMap(m.ksp, pk, csp);
    // c' is injective, so q is determined by c' q = 1 + t.
    GroupMap one_plus_t = map_sum(GroupMap::scalar(pk, 1), m.t);
    IntMatrix a = stack(csp, pk.rels), q(0, 3);
    for (std::size_t i = 0; i < K.size(); ++i) {
        auto w = solve_left(a, one_plus_t.matrix.row(i));
        if (!w) throw StructuralError("(1 + t)(" + K.names[i] + ") is not in the image of c'");
        w->resize(3);
        q.append_row(*w);
    }
    m.q = GroupMap(pk, m.ksp, q);
    for (const GroupMap* f : {&m.c, &m.r, &m.t, &m.c_sp, &m.q})
        if (!f->well_formed()) throw StructuralError("a K(B^13) structure map ignores torsion orders");
    return m;
}

struct IdentityCheck {
    std::string name;
    bool holds = false;
    std::string witness;  // a basis element where it fails
};

namespace detail {

inline IdentityCheck map_identity(std::string name, const GroupMap& lhs, const GroupMap& rhs,
                                  const std::vector<std::string>& source_names) {
    IdentityCheck out{std::move(name), true, {}};
    for (std::size_t i = 0; i < lhs.matrix.rows(); ++i)
        if (!lhs.target.equal(lhs.matrix.row(i), rhs.matrix.row(i))) {
            out.holds = false;
            out.witness = source_names[i];
            break;
        }
    return out;
}

}  // namespace detail

// The nine identities between c, r, t, c', q, each on every basis element,
// then multiplicativity of c and t, the module law r(x) z = r(x c(z)), and the
// product q(x) q(z) = r(x c'q(z)) seen after complexification.
inline std::vector<IdentityCheck> verify_structure_identities(const BergerModels& m) {
    const FiniteRingModel &K = m.K(), &KO = m.ko;
    const Presentation pk = m.t.source, pko = m.c.source;
    auto two = [](const Presentation& p) { return GroupMap::scalar(p, 2); };
    auto id = [](const Presentation& p) { return GroupMap::scalar(p, 1); };
    const GroupMap one_plus_t = map_sum(id(pk), m.t);
    const GroupMap t_ksp = GroupMap::scalar(m.ksp, 1);  // t acts trivially on KO and KSp
    std::vector<IdentityCheck> out{
        detail::map_identity("r c = 2", compose(m.r, m.c), two(pko), KO.names),
        detail::map_identity("c r = 1 + t", compose(m.c, m.r), one_plus_t, K.names),
        detail::map_identity("q c' = 2", compose(m.q, m.c_sp), two(m.ksp), m.ksp_names),
        detail::map_identity("c' q = 1 + t", compose(m.c_sp, m.q), one_plus_t, K.names),
        detail::map_identity("t c = c", compose(m.t, m.c), m.c, KO.names),
        detail::map_identity("r t = r", compose(m.r, m.t), m.r, K.names),
        detail::map_identity("t c' = c'", compose(m.t, m.c_sp), compose(m.c_sp, t_ksp), m.ksp_names),
        detail::map_identity("q t = q", compose(m.q, m.t), m.q, K.names),
        detail::map_identity("t t = 1", compose(m.t, m.t), id(pk), K.names),
    };

    IdentityCheck ring_c{"c is a ring map", true, {}};
    for (std::size_t i = 0; i < KO.size() && ring_c.holds; ++i)
        for (std::size_t j = 0; j < KO.size(); ++j) {
            IntVector lhs = m.c.apply(KO.mul(KO.basis(i), KO.basis(j)));
            if (!K.equal(lhs, K.mul(m.c.apply(KO.basis(i)), m.c.apply(KO.basis(j))))) {
                ring_c = {ring_c.name, false, KO.names[i] + " * " + KO.names[j]};
                break;
            }
        }
    out.push_back(ring_c);

    IdentityCheck ring_t{"t is a ring map", true, {}};
    for (std::size_t i = 0; i < K.size() && ring_t.holds; ++i)
        for (std::size_t j = 0; j < K.size(); ++j)
            if (!K.equal(m.t.apply(K.mul(K.basis(i), K.basis(j))), K.mul(m.t.apply(K.basis(i)), m.t.apply(K.basis(j))))) {
                ring_t = {ring_t.name, false, K.names[i] + " * " + K.names[j]};
                break;
            }
    out.push_back(ring_t);

    IdentityCheck module_r{"r(x) z = r(x c(z))", true, {}};
    for (std::size_t i = 0; i < K.size() && module_r.holds; ++i)
        for (std::size_t j = 0; j < KO.size(); ++j) {
            IntVector lhs = KO.mul(m.r.apply(K.basis(i)), KO.basis(j));
            IntVector rhs = m.r.apply(K.mul(K.basis(i), m.c.apply(KO.basis(j))));
            if (!KO.equal(lhs, rhs)) {
                module_r = {module_r.name, false, K.names[i] + ", " + KO.names[j]};
                break;
            }
        }
    out.push_back(module_r);

    // q(x) q(z) := r(x c'q(z)) in KO; its complexification must be c'q(x) c'q(z).
    IdentityCheck module_q{"c(r(x c'q(z))) = c'q(x) c'q(z)", true, {}};
    for (std::size_t i = 0; i < K.size() && module_q.holds; ++i)
        for (std::size_t j = 0; j < K.size(); ++j) {
            IntVector cq_i = m.c_sp.apply(m.q.apply(K.basis(i))), cq_j = m.c_sp.apply(m.q.apply(K.basis(j)));
            IntVector lhs = m.c.apply(m.r.apply(K.mul(K.basis(i), cq_j)));
            if (!K.equal(lhs, K.mul(cq_i, cq_j))) {
                module_q = {module_q.name, false, K.names[i] + ", " + K.names[j]};
                break;
            }
        }
    out.push_back(module_q);
    return out;
}

// ---------------------------------------------------------------------------
// Exterior squares

// lambda^2 on K from the character: representatives are Laurent polynomials
// in the line bundle b, so lambda^2 is computed on the nose.
inline IntVector lambda2_k(const KRingModel& k, const IntVector& x) {
    return k.from_character(lambda_series(k.to_character(x), 2)[2]);
}

// lambda^2(r x) in KO for x = sum n_j b^j: with R_j = r(b^j),
//   lambda^2(sum n_j R_j) = sum n_j lambda^2(R_j) + C(n_j, 2) R_j^2 + sum_{i<j} n_i n_j R_i R_j,
// and lambda^2(R_j) = 1, the orientation line of a realified complex line.
inline IntVector lambda2_of_realification(const BergerModels& m, const IntVector& x) {
    const FiniteRingModel& KO = m.ko;
    std::vector<std::pair<int, Integer>> parts;
    const Character ch = m.k.to_character(x);
    for (const auto& [e, n] : ch.terms()) parts.emplace_back(e[0], n);
    std::vector<IntVector> R;
    for (const auto& [j, n] : parts) {
        Character bj = m.k.line(j);
        // The complexified orientation line: lambda^2(b^j + b^-j) = 1.
        if (exterior_power(bj + conjugate(bj), 2) != Character::constant(bj.rank(), 1))
            throw StructuralError("realified line bundle with nontrivial determinant");
        R.push_back(m.r.apply(m.k.from_character(bj)));
    }
    IntVector out = KO.zero();
    for (std::size_t a = 0; a < parts.size(); ++a) {
        const Integer& n = parts[a].second;
        out = KO.add(out, KO.add(KO.scale(n, KO.one()), KO.scale(binomial(n, 2), KO.mul(R[a], R[a]))));
        for (std::size_t b = a + 1; b < parts.size(); ++b)
            out = KO.add(out, KO.scale(n * parts[b].second, KO.mul(R[a], R[b])));
    }
    return out;
}

// ---------------------------------------------------------------------------
// phi

struct PhiMap {
    const BergerModels* m = nullptr;
    std::vector<IntVector> on_basis;  // phi(e_i), memoized at construction

    // phi(n e) = n phi(e) + C(n, 2) r(e t(e)), for every integer n.
    IntVector multiple(std::size_t i, const Integer& n) const {
        const FiniteRingModel &K = m->K(), &KO = m->ko;
        IntVector e = K.basis(i);
        IntVector cross = m->r.apply(K.mul(e, m->t.apply(e)));
        return KO.add(KO.scale(n, on_basis[i]), KO.scale(binomial(n, 2), cross));
    }

    // Sums the summands n_i e_i in the given order with the addition law
    // phi(a + b) = phi(a) + phi(b) + r(t(a) b). `lift` replaces n_i by
    // n_i + lift_i * order_i, which must not change the result.
    IntVector evaluate(const IntVector& x, const std::vector<std::size_t>& order,
                       const std::vector<Integer>& lift = {}) const {
        const FiniteRingModel &K = m->K(), &KO = m->ko;
        IntVector acc = KO.zero(), partial = K.zero();
        for (std::size_t i : order) {
            Integer n = x[i] + (lift.empty() ? Integer(0) : lift[i] * K.order[i]);
            IntVector piece = K.scale(n, K.basis(i));
            IntVector cross = m->r.apply(K.mul(m->t.apply(partial), piece));
            acc = KO.add(KO.add(acc, multiple(i, n)), cross);
            partial = K.add(partial, piece);
        }
        return acc;
    }
    IntVector operator()(const IntVector& x) const {
        std::vector<std::size_t> order(x.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        return evaluate(m->K().reduce(x), order);
    }
};

// Extends phi from phi(u) and phi(y): phi(1) = 1 and the cubes and fourth
// powers of u by multiplicativity. phi(y) must agree with the addition law
// applied to y = u + t(u), using phi(t u) = phi(u).
inline PhiMap phi_extend(const BergerModels& m, const IntVector& phi_u, const IntVector& phi_y) {
    const FiniteRingModel &K = m.K(), &KO = m.ko;
    PhiMap f{&m, {}};
    IntVector cube = KO.mul(phi_u, KO.mul(phi_u, phi_u));
    f.on_basis = {KO.one(), phi_u, phi_y, cube, KO.mul(cube, phi_u)};
    IntVector tu = m.t.apply(K["u"]);
    if (!K.equal(K.add(K["u"], tu), K["y"])) throw StructuralError("u + t(u) != y in the K model");
    IntVector via_sum = KO.add(KO.scale(2, phi_u), m.r.apply(K.mul(tu, tu)));
    if (!KO.equal(via_sum, phi_y))
        throw StructuralError("phi(y) = " + KO.str(phi_y) + " contradicts the addition law, which gives " +
                              KO.str(via_sum));
    return f;
}

inline PhiMap standard_phi(const BergerModels& m) {
    const FiniteRingModel& KO = m.ko;
    return phi_extend(m, KO.scale(-1, KO["y'"]), KO["y'^2"]);
}

struct PhiLawReport {
    std::size_t pairs = 0;
    std::size_t multiplicative = 0, additive = 0, complexification = 0, conjugation = 0, exterior_square = 0;
    std::size_t well_defined = 0, decompositions = 0;
    bool image_in_image_of_r = true;
    bool misses_w = true;
    std::string first_failure;

    bool all_hold() const {
        return multiplicative == pairs && additive == pairs && complexification == pairs && conjugation == pairs &&
               exterior_square == pairs && well_defined == decompositions && image_in_image_of_r && misses_w;
    }
};

inline IntVector random_k_element(const FiniteRingModel& K, std::mt19937_64& rng, int bound = 6) {
    std::uniform_int_distribution<int> d(-bound, bound);
    IntVector x = K.zero();
    for (auto& v : x) v = d(rng);
    return K.reduce(x);
}

// The five laws on `pairs` seeded pairs, plus well-definedness of the
// extension along shuffled decompositions and torsion lifts.
inline PhiLawReport check_phi_laws(const BergerModels& m, const PhiMap& phi, std::uint64_t seed, std::size_t pairs = 200,
                                   std::size_t decompositions = 50) {
    const FiniteRingModel &K = m.K(), &KO = m.ko;
    std::mt19937_64 rng(seed);
    PhiLawReport rep;
    rep.pairs = pairs;
    rep.decompositions = decompositions;
    auto fail = [&](const std::string& what, const IntVector& x) {
        if (rep.first_failure.empty()) rep.first_failure = what + " at x = " + K.str(x);
    };
    const IntVector w = KO["w"];
    for (std::size_t n = 0; n < pairs; ++n) {
        IntVector x = random_k_element(K, rng), z = random_k_element(K, rng);
        IntVector px = phi(x), pz = phi(z), tx = m.t.apply(x);
        if (KO.equal(phi(K.mul(x, z)), KO.mul(px, pz))) ++rep.multiplicative; else fail("phi(xz) = phi(x)phi(z)", x);
        if (KO.equal(phi(K.add(x, z)), KO.add(KO.add(px, pz), m.r.apply(K.mul(tx, z))))) ++rep.additive;
        else fail("addition law", x);
        if (K.equal(m.c.apply(px), K.mul(x, tx))) ++rep.complexification; else fail("c phi(x) = x t(x)", x);
        if (KO.equal(phi(tx), px)) ++rep.conjugation; else fail("phi(t x) = phi(x)", x);
        if (KO.equal(px, KO.sub(lambda2_of_realification(m, x), m.r.apply(lambda2_k(m.k, x))))) ++rep.exterior_square;
        else fail("phi(x) = lambda^2(r x) - r(lambda^2 x)", x);
        // phi(1) = 1 is not in im r, so the inclusion is for reduced classes.
        IntVector xr = x;
        xr[K.unit] = 0;
        IntVector pxr = phi(xr);
        if (!m.in_image_of_r(pxr)) rep.image_in_image_of_r = false;
        if (KO.equal(px, w) || KO.equal(pxr, w)) rep.misses_w = false;
    }
    std::uniform_int_distribution<int> lift(-3, 3);
    for (std::size_t n = 0; n < decompositions; ++n) {
        IntVector x = random_k_element(K, rng);
        std::vector<std::size_t> order{0, 1, 2, 3, 4};
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<Integer> lifts(K.size());
        for (auto& l : lifts) l = lift(rng);
        if (KO.equal(phi.evaluate(x, order, lifts), phi(x))) ++rep.well_defined;
        else fail("phi depends on the decomposition", x);
    }
    // w is not in im r, so it cannot be a value of phi.
    if (m.in_image_of_r(w)) rep.misses_w = false;
    return rep;
}

// ---------------------------------------------------------------------------
// Image of alpha_O

struct ImageAlphaReport {
    IntMatrix generators;  // 1 and r(e_i), in KO coordinates
    FinAbGroup cokernel;   // KO / S
    bool equals_span_of_powers = false;  // S = Z 1 + Z y' + Z_5 y'^2
    bool subring = false;
    bool annihilates_w = false;          // reduced S times w is zero
    bool products_of_q_in_image_r = false;
    bool lambda2_of_q_in_image_r = false;
    bool misses_w = false;

    Integer index() const { return cokernel.order(); }
    bool holds() const {
        return cokernel.free_rank == 0 && index() == 2 && equals_span_of_powers && subring && annihilates_w &&
               products_of_q_in_image_r && lambda2_of_q_in_image_r && misses_w;
    }
};

// alpha_O is onto the subring generated by the classes of real
// representations. The candidate S = <1, im r> contains realifications,
// products q(x) q(z) = r(x c'q(z)) of quaternionic ones, and their exterior
// squares lambda^2(q z) = r(lambda^2 z) + phi(z); conversely S is reached by
// r and the trivial bundle. The inclusions into im r hold for reduced
// classes; phi(1) = 1 and lambda^2 q(1) = 1 lie in S but not in im r.
inline ImageAlphaReport image_alpha_O(const BergerModels& m, const PhiMap& phi, std::uint64_t seed = 1,
                                      std::size_t samples = 50) {
    const FiniteRingModel &K = m.K(), &KO = m.ko;
    ImageAlphaReport rep;
    rep.generators = IntMatrix(0, KO.size());
    rep.generators.append_row(KO.one());
    for (std::size_t i = 0; i < K.size(); ++i) rep.generators.append_row(m.r.apply(K.basis(i)));
    const IntMatrix rels = Presentation::cyclic(KO.order).rels;
    const IntMatrix S = stack(rep.generators, rels);
    rep.cokernel = quotient_presentation(KO.size(), S);

    IntMatrix powers = stack(IntMatrix::from_rows({KO.one(), KO["y'"], KO["y'^2"]}, KO.size()), rels);
    bool contained = true;
    for (std::size_t i = 0; i < S.rows(); ++i) contained = contained && in_row_span(powers, S.row(i));
    for (std::size_t i = 0; i < powers.rows(); ++i) contained = contained && in_row_span(S, powers.row(i));
    rep.equals_span_of_powers = contained;

    rep.subring = true;
    for (std::size_t i = 0; i < rep.generators.rows(); ++i)
        for (std::size_t j = 0; j < rep.generators.rows(); ++j)
            rep.subring = rep.subring && in_row_span(S, KO.mul(rep.generators.row(i), rep.generators.row(j)));

    rep.annihilates_w = true;
    for (std::size_t i = 1; i < rep.generators.rows(); ++i)
        rep.annihilates_w = rep.annihilates_w && KO.is_zero(KO.mul(rep.generators.row(i), KO["w"]));

    auto in_r = [&](const IntVector& v) { return m.in_image_of_r(v); };
    rep.products_of_q_in_image_r = true;
    for (std::size_t i = 0; i < K.size(); ++i)
        for (std::size_t j = 0; j < K.size(); ++j) {
            IntVector prod = m.r.apply(K.mul(K.basis(i), m.c_sp.apply(m.q.apply(K.basis(j)))));
            rep.products_of_q_in_image_r = rep.products_of_q_in_image_r && in_r(prod);
        }

    // lambda^2(q z) as r(lambda^2 z) + phi(z); its complexification must be
    // lambda^2 of the complex bundle (1 + t) z.
    std::mt19937_64 rng(seed);
    std::vector<IntVector> zs;
    for (std::size_t i = 0; i < K.size(); ++i) zs.push_back(K.basis(i));
    for (std::size_t n = 0; n < samples; ++n) zs.push_back(random_k_element(K, rng, 4));
    rep.lambda2_of_q_in_image_r = true;
    rep.misses_w = !in_r(KO["w"]);
    for (const auto& z : zs) {
        IntVector phz = phi(z);
        IntVector l2q = KO.add(m.r.apply(lambda2_k(m.k, z)), phz);
        IntVector complex = lambda2_k(m.k, m.c_sp.apply(m.q.apply(z)));
        // lambda^2 q(1) = 1, so only reduced z land in im r; all land in S.
        bool ok = (z[K.unit] == 0 ? in_r(l2q) : in_row_span(S, l2q)) && K.equal(m.c.apply(l2q), complex);
        rep.lambda2_of_q_in_image_r = rep.lambda2_of_q_in_image_r && ok;
        rep.misses_w = rep.misses_w && !KO.equal(phz, KO["w"]);
    }
    return rep;
}

// Cokernel of r on reduced groups (drop the unit summands of K and KO).
inline FinAbGroup reduced_realification_cokernel(const BergerModels& m) {
    const FiniteRingModel &K = m.K(), &KO = m.ko;
    auto reduced_orders = [](const FiniteRingModel& R) {
        std::vector<Integer> o;
        for (std::size_t i = 0; i < R.size(); ++i)
            if (i != R.unit) o.push_back(R.order[i]);
        return o;
    };
    IntMatrix a(0, KO.size() - 1);
    for (std::size_t i = 0; i < K.size(); ++i) {
        if (i == K.unit) continue;
        IntVector img = m.r.apply(K.basis(i)), row;
        if (img[KO.unit] != 0) throw StructuralError("r does not preserve reduced classes");
        for (std::size_t j = 0; j < KO.size(); ++j)
            if (j != KO.unit) row.push_back(img[j]);
        a.append_row(row);
    }
    return cokernel(GroupMap(Presentation::cyclic(reduced_orders(K)), Presentation::cyclic(reduced_orders(KO)), a));
}

// ---------------------------------------------------------------------------
// Pontryagin classes

struct PontryaginScan {
    int sign = 1;
    std::size_t scanned = 0;
    std::vector<std::array<int, 3>> trivial_nonzero;  // (mu, nu, delta) of mu y' + nu y'^2 + delta w
};

// mu y' + nu y'^2 + delta w over mu mod 10, nu mod 5, delta mod 2. Since
// p_1 = mu beta^2 with H^4 = Z, only mu = 0 can be trivial, so the scan over
// representatives decides the question for all of reduced KO.
inline PontryaginScan pontryagin_scan(int sign) {
    PontryaginScan s;
    s.sign = sign;
    const TruncGradedRing r = b13_integral_ring();
    for (int mu = 0; mu < 10; ++mu)
        for (int nu = 0; nu < 5; ++nu)
            for (int delta = 0; delta < 2; ++delta) {
                ++s.scanned;
                if (mu == 0 && nu == 0 && delta == 0) continue;
                if (r.equal(b13_pontryagin(mu, nu, delta, sign), r.one())) s.trivial_nonzero.push_back({mu, nu, delta});
            }
    return s;
}

// ---------------------------------------------------------------------------
// Bott sequence

enum class ArrowKind { surjective, injective, zero, partial };

struct BottArrow {
    std::string label;  // "r", "eta", "c"
    ArrowKind kind = ArrowKind::partial;
    std::optional<FinAbGroup> image, kernel;  // known parts of a partial arrow
    std::string note;
};

struct BottNode {
    std::string name;
    FinAbGroup group;
};

// The four displayed columns joined into one cycle: node i maps to node i+1
// by arrows[i], and the last node of each column is the first of the next.
struct BottCycle {
    std::vector<BottNode> nodes;
    std::vector<BottArrow> arrows;  // arrows[i]: nodes[i] -> nodes[(i+1) % n]
};

inline BottCycle b13_bott_cycle() {
    const FinAbGroup k0 = make_group(2, {5, 5}), k1 = make_group(3), z = make_group(1), z2 = make_group(2);
    const FinAbGroup z_z5 = make_group(1, {5}), z_z2 = make_group(1, {2}), ko0 = make_group(1, {5, 2});
    using A = ArrowKind;
    BottCycle c;
    auto node = [&](std::string n, FinAbGroup g) { c.nodes.push_back({std::move(n), std::move(g)}); };
    auto arrow = [&](std::string l, A k) { c.arrows.push_back({std::move(l), k, std::nullopt, std::nullopt, {}}); };
    auto partial = [&](std::string l, std::optional<FinAbGroup> im, std::optional<FinAbGroup> ker, std::string note) {
        c.arrows.push_back({std::move(l), A::partial, std::move(im), std::move(ker), std::move(note)});
    };
    // Column KO^-6, KO^-7, KO^-5.
    node("K^0", k0), arrow("r", A::surjective);
    node("KO^-6", z_z5), arrow("eta", A::zero);
    node("KO^-7", z2), arrow("c", A::injective);
    node("K^-1", k1), arrow("r", A::surjective);
    node("KO^-5", z), arrow("eta", A::zero);
    node("KO^-6", z_z5), arrow("c", A::injective);
    // Column KO^-4, KO^-5, KO^-3.
    node("K^0", k0), arrow("r", A::surjective);
    node("KO^-4", z_z5), arrow("eta", A::zero);
    node("KO^-5", z), arrow("c", A::injective);
    node("K^-1", k1), arrow("r", A::surjective);
    node("KO^-3", z2), arrow("eta", A::zero);
    node("KO^-4", z_z5), arrow("c", A::injective);
    // Column KO^-2, KO^-3, KO^-1.
    node("K^0", k0), arrow("r", A::surjective);
    node("KO^-2", z_z5), arrow("eta", A::zero);
    node("KO^-3", z2), arrow("c", A::injective);
    node("K^-1", k1), arrow("r", A::surjective);
    node("KO^-1", z_z2), arrow("eta", A::zero);
    node("KO^-2", z_z5), arrow("c", A::injective);
    // Column KO^0, KO^-1, KO^-7 with partially described maps.
    node("K^0", k0), partial("r", std::nullopt, std::nullopt, "cokernel Z_2");
    node("KO^0", ko0), partial("eta", make_group(0, {2}), z_z5, "image Z_2, iso on 2-torsion");
    node("KO^-1", z_z2), partial("c", z, make_group(0, {2}), "0 on Z_2, mono on Z");
    node("K^-1", k1), partial("r", std::nullopt, std::nullopt, "");
    node("KO^-7", z2), partial("eta", make_group(0, {2}), z2, "image Z_2");
    node("KO^0", ko0), partial("c", z_z5, make_group(0, {2}), "0 on Z_2, mono on Z + Z_5");
    return c;
}

struct BottNodeCheck {
    std::string node;
    std::string incoming, outgoing;
    enum class Status { exact, rank_consistent, unchecked, violated } status = Status::unchecked;
    std::string detail;
};

inline std::string to_string(BottNodeCheck::Status s) {
    switch (s) {
        case BottNodeCheck::Status::exact: return "exact";
        case BottNodeCheck::Status::rank_consistent: return "consistency-checked";
        case BottNodeCheck::Status::unchecked: return "unchecked";
        case BottNodeCheck::Status::violated: return "violated";
    }
    return "?";
}

namespace detail {

inline std::optional<FinAbGroup> arrow_image(const BottArrow& a, const FinAbGroup& src, const FinAbGroup& tgt) {
    switch (a.kind) {
        case ArrowKind::surjective: return tgt;
        case ArrowKind::injective: return src;
        case ArrowKind::zero: return FinAbGroup{};
        case ArrowKind::partial: return a.image;
    }
    return std::nullopt;
}

// The kernel of a surjection onto a free group is the source minus a free
// summand; other surjections only fix the kernel's rank.
inline std::optional<FinAbGroup> arrow_kernel(const BottArrow& a, const FinAbGroup& src, const FinAbGroup& tgt) {
    switch (a.kind) {
        case ArrowKind::surjective:
            if (tgt.is_free() && src.free_rank >= tgt.free_rank) return make_group(src.free_rank - tgt.free_rank, src.torsion);
            return std::nullopt;
        case ArrowKind::injective: return FinAbGroup{};
        case ArrowKind::zero: return src;
        case ArrowKind::partial: return a.kernel;
    }
    return std::nullopt;
}

inline std::optional<std::size_t> kernel_rank(const BottArrow& a, const FinAbGroup& src, const FinAbGroup& tgt) {
    if (auto k = arrow_kernel(a, src, tgt)) return k->free_rank;
    if (auto im = arrow_image(a, src, tgt)) return src.free_rank - im->free_rank;
    return std::nullopt;
}

}  // namespace detail

// Fills in the realification K^0 -> KO^0 of the partial column from the models.
inline void attach_realification(BottCycle& c, const BergerModels& m) {
    const FiniteRingModel &K = m.K(), &KO = m.ko;
    IntMatrix a(0, KO.size() - 1);
    for (std::size_t i = 1; i < K.size(); ++i) {
        IntVector img = m.r.apply(K.basis(i));
        a.append_row(IntVector(img.begin() + 1, img.end()));
    }
    std::vector<Integer> ok(K.order.begin() + 1, K.order.end()), oko(KO.order.begin() + 1, KO.order.end());
    GroupMap r(Presentation::cyclic(ok), Presentation::cyclic(oko), a);
    for (std::size_t i = 0; i < c.nodes.size(); ++i)
        if (c.nodes[i].name == "K^0" && c.nodes[(i + 1) % c.nodes.size()].name == "KO^0") {
            c.arrows[i].image = image(r);
            c.arrows[i].kernel = kernel(r);
        }
}

// Exactness at every node: im(incoming) = ker(outgoing) as abstract groups
// when both are determined by the arrow data, else equality of ranks when
// those are determined.
inline std::vector<BottNodeCheck> bott_segment_check(const BottCycle& c) {
    using S = BottNodeCheck::Status;
    const std::size_t n = c.nodes.size();
    if (c.arrows.size() != n) throw StructuralError("Bott cycle needs one arrow per node");
    std::vector<BottNodeCheck> out;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t prev = (i + n - 1) % n, next = (i + 1) % n;
        const BottArrow &f = c.arrows[prev], &g = c.arrows[i];
        const FinAbGroup &a = c.nodes[prev].group, &b = c.nodes[i].group, &d = c.nodes[next].group;
        BottNodeCheck chk{c.nodes[i].name, f.label, g.label, S::unchecked, {}};
        auto im = detail::arrow_image(f, a, b);
        auto ker = detail::arrow_kernel(g, b, d);
        auto im_rank = im ? std::optional<std::size_t>(im->free_rank) : std::nullopt;
        auto ker_rank = detail::kernel_rank(g, b, d);
        if (im && ker) {
            chk.status = *im == *ker ? S::exact : S::violated;
            chk.detail = "im " + im->str() + ", ker " + ker->str();
        } else if (im_rank && ker_rank) {
            chk.status = *im_rank == *ker_rank ? S::rank_consistent : S::violated;
            chk.detail = "ranks " + std::to_string(*im_rank) + " and " + std::to_string(*ker_rank);
        }
        out.push_back(std::move(chk));
    }
    return out;
}

}  // namespace kring
