#include "kring/charring.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace kring;
using kring::testing::Rng;
using kring::testing::random_character;

namespace {

Character mono(std::initializer_list<int> e, int k = 1) { return Character::monomial(Exponent(e), k); }

// Elementary symmetric polynomial e_k of an explicit weight list, by subsets.
Character elementary_by_subsets(const std::vector<Exponent>& weights, unsigned k) {
    const std::size_t rank = weights.front().size();
    Character out(rank);
    for (std::size_t mask = 0; mask < (std::size_t(1) << weights.size()); ++mask) {
        if (static_cast<unsigned>(__builtin_popcountll(mask)) != k) continue;
        Exponent e(rank, 0);
        for (std::size_t i = 0; i < weights.size(); ++i)
            if (mask >> i & 1)
                for (std::size_t j = 0; j < rank; ++j) e[j] += weights[i][j];
        out.add_term(e, 1);
    }
    return out;
}

}  // namespace

TEST(Character, ArithmeticDropsZeros) {
    Character a = mono({1, 0}) + mono({0, 1});
    Character b = a - mono({0, 1});
    EXPECT_EQ(b, mono({1, 0}));
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ((a * a).coeff({1, 1}), 2);
    EXPECT_EQ(a.pow(3).dimension(), 8);
    EXPECT_THROW(mono({1}) + mono({1, 0}), StructuralError);
}

TEST(Conjugation, CircleAndSymplectic) {
    auto s = circle("x");
    EXPECT_EQ(conjugate(s.generators[0].character), mono({-1}));
    auto h = sp(2);
    const Character& cu = h.generator("c'u").character;
    EXPECT_EQ(conjugate(cu), cu);
}

TEST(Conjugation, IsARingInvolution) {
    Rng rng(101);
    for (int trial = 0; trial < 200; ++trial) {
        Character a = random_character(rng, 3, 5, 3, false), b = random_character(rng, 3, 5, 3, false);
        EXPECT_EQ(conjugate(conjugate(a)), a);
        EXPECT_EQ(conjugate(a * b), conjugate(a) * conjugate(b));
        EXPECT_EQ(conjugate(a + b), conjugate(a) + conjugate(b));
    }
}

TEST(ExteriorPower, SmallCases) {
    Character circle_pair = mono({1}) + mono({-1});
    EXPECT_EQ(exterior_power(circle_pair, 2), Character::constant(1, 1));
    EXPECT_EQ(exterior_power(circle_pair, 0), Character::constant(1, 1));
    EXPECT_EQ(exterior_power(circle_pair, 1), circle_pair);
    EXPECT_TRUE(exterior_power(circle_pair, 3).is_zero());

    const GroupData h = sp(2);
    const Character& cu = h.generator("c'u").character;
    EXPECT_EQ(exterior_power(cu, 3), cu);
    EXPECT_EQ(exterior_power(cu, 4), Character::constant(2, 1));
    EXPECT_EQ(exterior_power(cu, 2), h.generator("lambda^2 c'u").character);

    EXPECT_THROW(exterior_power(mono({1}) - mono({0}), 2), StructuralError);
}

TEST(ExteriorPower, MatchesSubsetEnumeration) {
    Rng rng(7);
    std::uniform_int_distribution<int> e(-2, 2);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Exponent> w(6, Exponent(2));
        Character c(2);
        for (auto& x : w) {
            for (auto& v : x) v = e(rng);
            c.add_term(x, 1);
        }
        for (unsigned k = 1; k <= 6; ++k) EXPECT_EQ(exterior_power(c, k), elementary_by_subsets(w, k)) << k;
    }
}

TEST(ExteriorPower, LambdaSeriesIsMultiplicative) {
    Rng rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        Character a = random_character(rng, 2, 3, 2, true), b = random_character(rng, 2, 3, 2, true);
        auto la = lambda_series_effective(a, 4), lb = lambda_series_effective(b, 4);
        auto lab = lambda_series_effective(a + b, 4);
        for (unsigned k = 0; k <= 4; ++k) {
            Character sum(2);
            for (unsigned i = 0; i <= k; ++i) sum += la[i] * lb[k - i];
            EXPECT_EQ(lab[k], sum) << "k=" << k;
        }
    }
}

TEST(ExteriorPower, VirtualSeriesInvertsTheEffectiveOne) {
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        Character a = random_character(rng, 2, 3, 2, true), b = random_character(rng, 2, 3, 2, true);
        auto diff = lambda_series(a - b, 4), lb = lambda_series_effective(b, 4), la = lambda_series_effective(a, 4);
        for (unsigned k = 0; k <= 4; ++k) {
            Character prod(2);
            for (unsigned i = 0; i <= k; ++i) prod += diff[i] * lb[k - i];
            EXPECT_EQ(prod, la[k]);
        }
        // Effective input: the series agrees with the plain one.
        EXPECT_EQ(lambda_series(a, 4), la);
    }
}

TEST(Restriction, BergerImages) {
    auto p = berger_b13();
    auto img = restricted_generators(p);
    // (c'u) x + x^-4 and (c'u) x^-1 + x^4
    Character cu = p.h.generator("c'u").character, x = p.h.generator("x").character;
    Character x_inv = conjugate(x);
    EXPECT_EQ(img[0], cu * x + x_inv.pow(4));
    EXPECT_EQ(img[3], cu * x_inv + x.pow(4));
    EXPECT_EQ(conjugate(img[0]), img[3]);
    EXPECT_EQ(conjugate(img[1]), img[2]);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(img[k].dimension(), p.g.generators[k].character.dimension());
    // Restriction commutes with exterior powers.
    for (unsigned k = 1; k <= 4; ++k) EXPECT_EQ(exterior_power(img[0], k), img[k - 1]);
}

TEST(Restriction, IdentityAssignmentIsIdentity) {
    auto g = su(4);
    Restriction id{g.spec, g.spec, {}};
    for (std::size_t i = 0; i < 3; ++i) id.images.push_back(Character::variable(3, i));
    for (const auto& gen : g.generators) EXPECT_EQ(restrict(gen.character, id), gen.character);
}

TEST(Restriction, IsARingHomomorphism) {
    Rng rng(5);
    auto p = berger_b13();
    for (int trial = 0; trial < 100; ++trial) {
        Character a = random_character(rng, 4, 4, 2, false), b = random_character(rng, 4, 4, 2, false);
        EXPECT_EQ(restrict(a * b, p.restriction), restrict(a, p.restriction) * restrict(b, p.restriction));
        EXPECT_EQ(restrict(a + b, p.restriction), restrict(a, p.restriction) + restrict(b, p.restriction));
    }
    // Non-monomial images on polynomial characters.
    CharacterRingSpec two = CharacterRingSpec::plain({"s", "t"});
    Restriction r{two, two, {mono({1, 0}) + mono({0, 1}), mono({1, 1}) - mono({0, 0})}};
    for (int trial = 0; trial < 50; ++trial) {
        Character a(2), b(2);
        std::uniform_int_distribution<int> e(0, 3), k(-3, 3);
        for (int i = 0; i < 3; ++i) a.add_term({e(rng), e(rng)}, k(rng)), b.add_term({e(rng), e(rng)}, k(rng));
        EXPECT_EQ(restrict(a * b, r), restrict(a, r) * restrict(b, r));
    }
    EXPECT_THROW(restrict(mono({-1, 0}), r), StructuralError);
}

TEST(Restriction, RejectsMismatchedData) {
    auto p = berger_b13();
    Restriction bad = p.restriction;
    bad.images.pop_back();
    EXPECT_THROW(restrict(p.g.generators[0].character, bad), StructuralError);
    EXPECT_THROW(restrict(mono({1, 0}), p.restriction), StructuralError);
}

TEST(GroupTables, SelfConjugacyHolds) {
    std::vector<GroupData> groups;
    for (unsigned n = 2; n <= 8; ++n) groups.push_back(su(n));
    for (unsigned n = 1; n <= 4; ++n) groups.push_back(sp(n));
    for (unsigned n = 1; n <= 5; ++n) groups.push_back(spin_odd(n));
    for (unsigned n = 2; n <= 6; ++n) groups.push_back(spin_even(n));
    groups.push_back(g2());
    groups.push_back(circle());
    groups.push_back(product(sp(2), circle()));
    for (const auto& g : groups) EXPECT_EQ(type_table_violation(g), "") << g.name;
}

TEST(GroupTables, DetectsAMislabelledGenerator) {
    auto g = su(3);
    g.generators[0].type = RepType::real;
    EXPECT_EQ(type_table_violation(g), "v");
}

TEST(GroupTables, TypeCounts) {
    auto t = su(4).type_counts();
    EXPECT_EQ(t.complex, 2);
    EXPECT_EQ(t.real, 1);
    EXPECT_EQ(t.quaternionic, 0);
    auto s7 = spin_odd(3).type_counts();  // Spin(7): two vector powers and a real spinor
    EXPECT_EQ(s7.real, 3);
    auto s5 = spin_odd(2).type_counts();  // Spin(5) = Sp(2)
    EXPECT_EQ(s5.real, 1);
    EXPECT_EQ(s5.quaternionic, 1);
    EXPECT_EQ(g2().type_counts().real, 2);
    EXPECT_EQ(spin_even(5).type_counts().complex, 2);
}

TEST(FixedSubring, BergerCentralQuotient) {
    auto p = berger_b13();
    FixedSubring f = central_fixed_subring(p.h, p.central_action, 2);
    EXPECT_TRUE(f.complete);
    // Generators ordered as [c'u, lambda^2 c'u, x].
    std::vector<GeneratorMonomial> expected{{0, 0, -2}, {0, 0, 2}, {0, 1, 0}, {1, 0, -1}, {1, 0, 1}, {2, 0, 0}};
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(f.generators, expected);
    EXPECT_TRUE(f.is_fixed({1, 3, 1}));
    EXPECT_FALSE(f.is_fixed({1, 0, 0}));
    EXPECT_FALSE(central_fixed_subring(p.h, p.central_action, 1).complete);
}

TEST(FixedSubring, TrivialActionAndCircle) {
    auto h = product(sp(2), circle());
    FixedSubring f = central_fixed_subring(h, {1, 1, 1}, 2);
    std::vector<GeneratorMonomial> expected{{0, 0, -1}, {0, 0, 1}, {0, 1, 0}, {1, 0, 0}};
    EXPECT_EQ(f.generators, expected);

    FixedSubring c = central_fixed_subring(circle(), {-1}, 4);
    EXPECT_EQ(c.generators, (std::vector<GeneratorMonomial>{{-2}, {2}}));
    EXPECT_EQ(c.names[1], "x^2");
}

TEST(Decompose, RecoversRandomGeneratorPolynomials) {
    Rng rng(31);
    std::vector<GroupData> groups{su(3), su(4), sp(2), spin_odd(2), spin_odd(3), spin_even(3), g2(),
                                  product(sp(2), circle())};
    for (const auto& g : groups) {
        const std::size_t n = g.generators.size();
        for (int trial = 0; trial < 10; ++trial) {
            std::map<GeneratorMonomial, Integer> poly;
            std::uniform_int_distribution<int> e(0, 2), k(-4, 4);
            for (int t = 0; t < 3; ++t) {
                GeneratorMonomial m(n);
                for (std::size_t i = 0; i < n; ++i) {
                    m[i] = e(rng);
                    if (g.generators[i].invertible && e(rng) == 0) m[i] = -m[i];
                }
                Integer c = k(rng);
                if (c != 0) poly[m] += c;
            }
            Character ch(g.spec.rank);
            for (const auto& [m, c] : poly) ch += c * evaluate(g, m);
            auto back = decompose(g, ch);
            for (auto it = poly.begin(); it != poly.end();) it = it->second == 0 ? poly.erase(it) : std::next(it);
            EXPECT_EQ(back, poly) << g.name;
        }
    }
}

TEST(Decompose, ReducedBergerRelations) {
    auto p = berger_b13();
    FixedSubring f = central_fixed_subring(p.h, p.central_action, 2);
    FreeCoordinates fc = free_coordinates(p.h, f);
    ASSERT_EQ(fc.names, (std::vector<std::string>{"c'u*x", "(lambda^2 c'u)", "x^2"}));
    auto img = restricted_generators(p);
    // d = c'u x, e = lambda^2 c'u, b = x^2; coordinates (d, e, b).
    std::vector<Character> expected{mono({1, 0, 0}) + mono({0, 0, -2}), mono({0, 1, 1}) + mono({1, 0, -2}),
                                    mono({0, 1, -1}) + mono({1, 0, 1}), mono({1, 0, -1}) + mono({0, 0, 2})};
    for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(in_coordinates(p.h, fc, img[k]), expected[k]) << k;
    // a = (c'u)^2 = d^2 b^-1
    EXPECT_EQ(fc.rewrite({2, 0, 0}), (std::vector<int>{2, 0, -1}));
    EXPECT_THROW(fc.rewrite({1, 0, 0}), StructuralError);
}

TEST(Decompose, RejectsNonInvariantInput) {
    EXPECT_THROW(decompose(sp(2), mono({1, 0})), StructuralError);
}
