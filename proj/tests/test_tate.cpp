#include "kring/tate.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace kring;
using kring::testing::Rng;
using kring::testing::random_unimodular;
using kring::testing::unit_vector;
using kring::testing::product_ring;
using kring::testing::group_ring;
using kring::testing::truncated_ring;
using kring::testing::projective_space_ring;
using kring::testing::change_basis;
using kring::testing::inverse_unimodular;
using kring::testing::random_free_ring;

namespace {

IntMatrix mat(std::initializer_list<std::initializer_list<long long>> rows) { return IntMatrix(rows); }

InvolutiveModule trivial() { return InvolutiveModule::free(mat({{1}})); }
InvolutiveModule sign() { return InvolutiveModule::free(mat({{-1}})); }
InvolutiveModule swap() { return InvolutiveModule::free(mat({{0, 1}, {1, 0}})); }

}  // namespace

TEST(Tate, ElementaryModules) {
    EXPECT_EQ(h_plus(trivial()).str(), "Z_2");
    EXPECT_EQ(h_minus(trivial()).str(), "0");
    EXPECT_EQ(h_plus(sign()).str(), "0");
    EXPECT_EQ(h_minus(sign()).str(), "Z_2");
    EXPECT_EQ(h_plus(swap()).str(), "0");
    EXPECT_EQ(h_minus(swap()).str(), "0");
}

TEST(Tate, ModulesWithTorsion) {
    // Z_2 with the identity: ker(0) / im(2) = Z_2 in both degrees.
    InvolutiveModule z2(Presentation::cyclic({2}), mat({{1}}));
    EXPECT_EQ(h_plus(z2).str(), "Z_2");
    EXPECT_EQ(h_minus(z2).str(), "Z_2");
    // Odd torsion has no Tate cohomology.
    InvolutiveModule z5(Presentation::cyclic({5}), mat({{-1}}));
    EXPECT_TRUE(h_plus(z5).is_trivial());
    EXPECT_TRUE(h_minus(z5).is_trivial());
    EXPECT_THROW(h_plus(InvolutiveModule::free(mat({{2}}))), StructuralError);
    EXPECT_THROW(h_plus(InvolutiveModule::free(mat({{1, 1}, {0, 1}}))), StructuralError);
}

TEST(Tate, TensorProducts) {
    auto ts = tensor_involutive(trivial(), sign());
    EXPECT_EQ(ts.T, mat({{-1}}));
    auto st = tensor_involutive(swap(), trivial());
    EXPECT_EQ(st.T, swap().T);
    auto ss = tensor_involutive(swap(), swap());
    EXPECT_EQ(ss.gens(), 4u);
    // swap ⊗ swap is two copies of swap, so both Tate groups vanish.
    EXPECT_EQ(h_plus(ss).str(), "0");
    EXPECT_EQ(h_minus(ss).str(), "0");
    EXPECT_EQ(bousfield_decompose(ss), (BousfieldCounts{0, 0, 2}));
}

TEST(Tate, KunnethSmallCases) {
    auto r = kunneth_check(trivial(), trivial());
    EXPECT_TRUE(r.holds());
    EXPECT_EQ(r.plus_direct.str(), "Z_2");
    EXPECT_EQ(r.minus_direct.str(), "0");
    auto s = kunneth_check(swap(), trivial());
    EXPECT_TRUE(s.holds());
    EXPECT_TRUE(s.plus_direct.is_trivial() && s.minus_direct.is_trivial());
    InvolutiveModule z2(Presentation::cyclic({2}), mat({{1}}));
    EXPECT_THROW(kunneth_check(z2, trivial()), StructuralError);
    EXPECT_TRUE(kunneth_check(trivial(), z2).holds());
}

TEST(Tate, ProductOfTwoSpheresPicksUpTheMinusSummand) {
    // K(S^2) = Z[x]/(x^2), conjugation x -> -x.
    InvolutiveRing s2 = projective_space_ring(2);
    ASSERT_EQ(s2.violation(), "");
    EXPECT_EQ(h_plus(s2.module).str(), "Z_2");
    EXPECT_EQ(h_minus(s2.module).str(), "Z_2");
    InvolutiveRing prod = tensor_rings(s2, s2);
    ASSERT_EQ(prod.violation(), "");
    auto r = kunneth_check(s2, s2);
    EXPECT_TRUE(r.holds());
    // h+a ⊗ h+b contributes one Z_2 and h-a ⊗ h-b the other.
    EXPECT_EQ(r.plus_direct.str(), "Z_2^2");
}

TEST(Tate, KunnethOnRandomFreeRings) {
    Rng rng(4242);
    int checked = 0;
    for (int trial = 0; trial < 50; ++trial) {
        InvolutiveRing a = random_free_ring(rng, 6), b = random_free_ring(rng, 6);
        ASSERT_EQ(a.violation(), "") << trial;
        ASSERT_EQ(b.violation(), "") << trial;
        auto r = kunneth_check(a, b);
        EXPECT_TRUE(r.holds()) << trial << ": " << r.plus_direct.str() << " vs " << r.plus_predicted.str();
        for (const auto& g : {r.plus_direct, r.minus_direct}) EXPECT_TRUE(g.killed_by(2));
        ++checked;
    }
    EXPECT_EQ(checked, 50);
}

TEST(Tate, AnnihilatedByTwoAndBaseChangeInvariant) {
    Rng rng(9);
    std::uniform_int_distribution<int> pick(0, 2);
    for (int trial = 0; trial < 100; ++trial) {
        BousfieldCounts c{static_cast<std::size_t>(pick(rng)), static_cast<std::size_t>(pick(rng)),
                          static_cast<std::size_t>(pick(rng))};
        if (c.trivial + c.sign + c.swap == 0) continue;
        InvolutiveModule m = bousfield_module(c);
        IntMatrix p = random_unimodular(rng, m.gens(), 8);
        InvolutiveModule q = conjugate_by(m, p, inverse_unimodular(p));
        EXPECT_EQ(h_plus(q), h_plus(m));
        EXPECT_EQ(h_minus(q), h_minus(m));
        EXPECT_TRUE(h_plus(q).killed_by(2));
        EXPECT_TRUE(h_minus(q).killed_by(2));
        EXPECT_EQ(bousfield_decompose(q), c);
        // Torsion quotient of the same module: still killed by 2.
        IntMatrix rel(1, q.gens());
        rel(0, 0) = 6;
        IntVector t_rel = row_times(rel.row(0), q.T);
        rel.append_row(t_rel);
        InvolutiveModule tq(Presentation(q.gens(), rel), q.T);
        EXPECT_TRUE(h_plus(tq).killed_by(2));
        EXPECT_TRUE(h_minus(tq).killed_by(2));
    }
}

TEST(Tate, BousfieldExamples) {
    EXPECT_EQ(bousfield_decompose(InvolutiveModule::free(mat({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}}))),
              (BousfieldCounts{2, 1, 0}));
    EXPECT_EQ(bousfield_decompose(swap()), (BousfieldCounts{0, 0, 1}));
    // Reduced free part of K(B^13) on {u, y}: t(u) = y - u, t(y) = y. The
    // trace is 0 and both Tate groups vanish: a single swap summand.
    InvolutiveModule b13 = InvolutiveModule::free(mat({{-1, 1}, {0, 1}}));
    EXPECT_EQ(bousfield_decompose(b13), (BousfieldCounts{0, 0, 1}));
    InvolutiveModule z2(Presentation::cyclic({2}), mat({{1}}));
    EXPECT_THROW(bousfield_decompose(z2), StructuralError);
}

TEST(Tate, RepresentationRingModelsHaveNoMinusCohomology) {
    std::vector<GroupData> groups{su(2), su(3), su(4), su(5), sp(2), spin_odd(3), spin_even(3), spin_even(4),
                                  g2(), circle(), product(sp(2), circle()), product(su(3), su(3))};
    for (const auto& g : groups) {
        InvolutiveModule m = representation_ring_model(g, 3);
        EXPECT_TRUE(h_minus(m).is_trivial()) << g.name;
        EXPECT_TRUE(h_plus(m).killed_by(2)) << g.name;
    }
    // SU(3): degree <= 1 monomials are 1, v, lambda^2 v; v and its dual swap.
    InvolutiveModule m = representation_ring_model(su(3), 1);
    EXPECT_EQ(bousfield_decompose(m), (BousfieldCounts{1, 0, 1}));
}
