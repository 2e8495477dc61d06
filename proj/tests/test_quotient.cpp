#include "kring/quotient.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <chrono>

using namespace kring;
using kring::testing::Rng;

namespace {

LaurentIdealPresentation univariate(std::vector<Character> rels) {
    LaurentIdealPresentation p;
    p.names = {"x"};
    p.invertible = {true};
    p.relations = std::move(rels);
    return p;
}

Character x_pow(int k) { return Character::variable(1, 0, k); }
Character one() { return Character::constant(1, 1); }

// Z[u, y] / (the displayed relations for the complex K-ring of B^13).
LaurentIdealPresentation displayed_presentation() {
    LaurentIdealPresentation p;
    p.names = {"u", "y"};
    p.invertible = {false, false};
    Character u = p.variable("u"), y = p.variable("y");
    Integer five = 5;
    p.relations = {five * u.pow(3), five * u.pow(4), u.pow(5),     y.pow(3), u * y.pow(2),
                   u.pow(3) * y,    y.pow(2) - u.pow(4), y - u.pow(2) + u.pow(3) - u.pow(4),
                   u * y - u.pow(3) + u.pow(4), u.pow(2) * y - u.pow(4)};
    return p;
}

struct BergerElements {
    Character b, c, u, y;
};

BergerElements berger_elements(const LaurentIdealPresentation& p) {
    BergerElements e;
    e.b = p.variable("x^2");
    e.c = conjugate(e.b);
    e.u = e.b - p.constant(1);
    e.y = e.b + e.c - p.constant(2);
    return e;
}

}  // namespace

TEST(Quotient, SmallGoldens) {
    EXPECT_EQ(additive_structure(univariate({x_pow(1) - one()})).group.str(), "Z");
    auto s2 = additive_structure(univariate({x_pow(1) + x_pow(-1) - Character::constant(1, 2)}));
    EXPECT_EQ(s2.group.str(), "Z^2");
    EXPECT_TRUE(is_basis(s2, {one(), x_pow(1)}, {0, 0}));
    EXPECT_EQ(additive_structure(univariate({x_pow(1) - one()})).window, kDefaultWindow);
}

TEST(Quotient, NoStabilizationIsLoud) {
    try {
        additive_structure(univariate({Integer(2) * x_pow(1)}), 4);
        ADD_FAILURE() << "expected IncompleteError";
    } catch (const IncompleteError& e) {
        EXPECT_EQ(e.at_window.str(), "Z_2^9");
        EXPECT_EQ(e.at_next.str(), "Z_2^11");
    }
}

TEST(Quotient, FlagOfSU2IsTheTwoSphere) {
    LaurentIdealPresentation p = augmentation_quotient(su2_over_torus());
    ASSERT_EQ(p.relations.size(), 1u);
    EXPECT_EQ(p.relations[0], x_pow(1) + x_pow(-1) - Character::constant(1, 2));
    EXPECT_EQ(additive_structure(p).group.str(), "Z^2");
}

TEST(Quotient, GroupOverItselfIsAPoint) {
    HomogeneousPair same{"SU(3)/SU(3)", su(3), su(3), {}, {}};
    same.restriction = {same.g.spec, same.h.spec, {Character::variable(2, 0), Character::variable(2, 1)}};
    auto p = augmentation_quotient(same);
    EXPECT_EQ(additive_structure(p).group.str(), "Z");
}

TEST(Quotient, EliminationFollowsTheRelations) {
    LaurentIdealPresentation p = berger_presentation();
    ASSERT_EQ(p.names, (std::vector<std::string>{"c'u*x", "(lambda^2 c'u)", "x^2"}));
    LaurentIdealPresentation q = eliminate_units(p);
    ASSERT_EQ(q.names, (std::vector<std::string>{"x^2"}));
    Character b = q.variable("x^2"), c = conjugate(b);
    Integer five = 5, ten = 10;
    // d = 5 - c^2 and e = (10 - d c^2) c
    Character d = q.constant(5) - c.pow(2);
    EXPECT_EQ(q.aliases.at("c'u*x"), d);
    EXPECT_EQ(q.aliases.at("(lambda^2 c'u)"), (q.constant(10) - d * c.pow(2)) * c);
    // a = (c'u)^2 = d^2 c
    EXPECT_EQ(q.aliases.at("c'u^2"), d.pow(2) * c);
    EXPECT_EQ(q.aliases.at("x^-2"), c);
    ASSERT_EQ(q.relations.size(), 2u);
    EXPECT_EQ(q.relations[1], d * c + b.pow(2) - q.constant(5));

    LaurentIdealPresentation none = augmentation_quotient(su2_over_torus());
    EXPECT_EQ(eliminate_units(none).relations, none.relations);
}

TEST(Quotient, EliminationErrors) {
    LaurentIdealPresentation p = berger_presentation();
    auto twice = p;
    twice.eliminable = {{p.names[0], 0}, {p.names[0], 1}};
    EXPECT_THROW(eliminate_units(twice), StructuralError);
    auto nonlinear = p;
    nonlinear.eliminable = {{p.names[2], 3}};  // b appears as b^2
    EXPECT_THROW(eliminate_units(nonlinear), StructuralError);
    auto reused = p;
    reused.eliminable = {{p.names[0], 0}, {p.names[1], 0}};
    EXPECT_THROW(eliminate_units(reused), StructuralError);
}

TEST(Quotient, BergerAdditiveStructure) {
    auto t0 = std::chrono::steady_clock::now();
    LaurentIdealPresentation p = eliminate_units(berger_presentation());
    AdditiveStructure s = additive_structure(p, 12);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    EXPECT_EQ(s.group.str(), "Z^3 + Z_5^2");
    EXPECT_EQ(s.next_window_group, s.group);
    EXPECT_EQ(s.basis_reps.size(), 5u);
    EXPECT_LT(secs, 5.0);
    EXPECT_EQ(additive_structure(p, 14).group, s.group);
    EXPECT_EQ(additive_structure(p, 6).group, s.group);
}

TEST(Quotient, DisplayedPresentationAgrees) {
    auto t0 = std::chrono::steady_clock::now();
    AdditiveStructure s = additive_structure(displayed_presentation(), 12);
    EXPECT_EQ(s.group.str(), "Z^3 + Z_5^2");
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    EXPECT_LT(secs, 10.0);
}

TEST(Quotient, DisplayedRelationsVanishOnComputedQuotient) {
    LaurentIdealPresentation p = eliminate_units(berger_presentation());
    AdditiveStructure s = additive_structure(p);
    auto [b, c, u, y] = berger_elements(p);
    Integer five = 5;
    for (const Character& r : displayed_presentation().relations) {
        // Substitute u, y into the relation polynomial.
        Character v(1);
        for (const auto& [e, k] : r.terms()) v += k * (u.pow(e[0]) * y.pow(e[1]));
        EXPECT_TRUE(s.is_zero(v)) << r.str({"u", "y"});
    }
    EXPECT_TRUE(is_basis(s, {p.constant(1), u, y, u.pow(3), u.pow(4)}, {0, 0, 0, 5, 5}));
    EXPECT_FALSE(is_basis(s, {p.constant(1), u, y, u.pow(3), u.pow(4)}, {0, 0, 0, 0, 5}));
    // u^2 = y + u^3 - u^4, so u^2 may replace y, but 2y may not.
    EXPECT_TRUE(is_basis(s, {p.constant(1), u, u.pow(2), u.pow(3), u.pow(4)}, {0, 0, 0, 5, 5}));
    EXPECT_FALSE(is_basis(s, {p.constant(1), u, Integer(2) * y, u.pow(3), u.pow(4)}, {0, 0, 0, 5, 5}));
    // u^3 and u^4 in the shifted generators b' = b - 1, c' = c - 1.
    Character bp = u, cp = c - p.constant(1);
    Integer two = 2, three = 3;
    EXPECT_TRUE(s.is_zero(u.pow(3) - (two * bp.pow(2) + cp.pow(2) - three * bp - three * cp)));
    EXPECT_TRUE(s.is_zero(u.pow(4) - (bp.pow(2) + cp.pow(2) - two * bp - two * cp)));
    EXPECT_TRUE(s.is_zero(u * y.pow(2)));
    EXPECT_FALSE(s.is_zero(u.pow(3)));
}

TEST(Quotient, NormalFormIsLinearAndKillsRelations) {
    Rng rng(77);
    LaurentIdealPresentation p = eliminate_units(berger_presentation());
    AdditiveStructure s = additive_structure(p);
    std::uniform_int_distribution<int> e(-4, 4), k(-9, 9);
    auto random_poly = [&] {
        Character c(1);
        for (int i = 0; i < 4; ++i) c.add_term({e(rng)}, k(rng));
        return c;
    };
    const std::size_t nfree = s.group.free_rank;
    for (int trial = 0; trial < 100; ++trial) {
        Character a = random_poly(), b = random_poly();
        IntVector ca = s.coordinates(a), cb = s.coordinates(b), cab = s.coordinates(a + b);
        for (std::size_t i = 0; i < cab.size(); ++i) {
            Integer sum = ca[i] + cb[i];
            if (i >= nfree) sum = mod_floor(sum, s.group.torsion[i - nfree]);
            EXPECT_EQ(cab[i], sum);
        }
        for (const auto& r : p.relations) EXPECT_TRUE(s.is_zero(random_poly() * r));
        // Round trip through the canonical coordinates.
        EXPECT_EQ(s.coordinates(s.element(ca)), ca);
    }
    EXPECT_THROW(s.coordinates(Character::variable(1, 0, 40)), WindowError);
}

TEST(Quotient, ConjugationPreservesTheIdeal) {
    LaurentIdealPresentation p = eliminate_units(berger_presentation());
    AdditiveStructure s = additive_structure(p);
    for (const auto& r : p.relations) EXPECT_TRUE(s.is_zero(conjugate(r)));
    auto [b, c, u, y] = berger_elements(p);
    EXPECT_EQ(conjugate(u), y - u);
    EXPECT_EQ(conjugate(y), y);
    std::vector<Character> basis{p.constant(1), u, y, u.pow(3), u.pow(4)};
    for (const auto& x : basis)
        for (const auto& z : basis) EXPECT_TRUE(s.is_zero(conjugate(x * z) - conjugate(x) * conjugate(z)));
}
