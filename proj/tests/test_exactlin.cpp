#include "kring/exactlin.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <functional>

using namespace kring;
using kring::testing::Rng;
using kring::testing::is_smith_diagonal;
using kring::testing::random_matrix;
using kring::testing::random_unimodular;

namespace {

// Determinantal divisors straight from the definition: D_k is the gcd of all
// k x k minors, and d_k = D_k / D_{k-1}. Exponential; small matrices only.
std::vector<Integer> invariants_from_minors(const IntMatrix& m) {
    const std::size_t r = m.rows(), c = m.cols();
    std::vector<Integer> dets{1};
    for (std::size_t k = 1; k <= std::min(r, c); ++k) {
        Integer g = 0;
        std::vector<std::size_t> rows, cols;
        std::function<void(std::size_t)> pick_cols;
        std::function<void(std::size_t)> pick_rows = [&](std::size_t from) {
            if (rows.size() == k) {
                pick_cols(0);
                return;
            }
            for (std::size_t i = from; i < r; ++i) {
                rows.push_back(i);
                pick_rows(i + 1);
                rows.pop_back();
            }
        };
        pick_cols = [&](std::size_t from) {
            if (cols.size() == k) {
                IntMatrix sub(k, k);
                for (std::size_t a = 0; a < k; ++a)
                    for (std::size_t b = 0; b < k; ++b) sub(a, b) = m(rows[a], cols[b]);
                g = gcd(g, determinant(sub));
                return;
            }
            for (std::size_t j = from; j < c; ++j) {
                cols.push_back(j);
                pick_cols(j + 1);
                cols.pop_back();
            }
        };
        pick_rows(0);
        if (g == 0) break;
        dets.push_back(g);
    }
    std::vector<Integer> inv;
    for (std::size_t k = 1; k < dets.size(); ++k) inv.push_back(dets[k] / dets[k - 1]);
    return inv;
}

IntMatrix transpose_of(const IntMatrix& m) { return m.transpose(); }

}  // namespace

TEST(SmithForm, SmallGoldens) {
    EXPECT_EQ(smith_normal_form(IntMatrix{{2, 0}, {0, 3}}).D, (IntMatrix{{1, 0}, {0, 6}}));
    EXPECT_EQ(smith_normal_form(IntMatrix{{2, 4}, {6, 8}}).D, (IntMatrix{{2, 0}, {0, 4}}));
    EXPECT_EQ(smith_normal_form(IntMatrix{{0, 0}, {0, 0}}).rank, 0u);
    auto f = smith_normal_form(IntMatrix{{6, 4, 2}});
    EXPECT_EQ(f.rank, 1u);
    EXPECT_EQ(f.diag(0), 2);
}

TEST(SmithForm, EmptyShapes) {
    auto f = smith_normal_form(IntMatrix(0, 3));
    EXPECT_EQ(f.rank, 0u);
    EXPECT_EQ(f.V, IntMatrix::identity(3));
    EXPECT_EQ(quotient_presentation(3, IntMatrix(0, 3)).str(), "Z^3");
}

TEST(SmithForm, TransformsOnRandomMatrices) {
    Rng rng(20240601);
    std::uniform_int_distribution<std::size_t> dim(1, 7);
    for (int trial = 0; trial < 500; ++trial) {
        std::size_t r = dim(rng), c = dim(rng);
        IntMatrix m = random_matrix(rng, r, c, 6, 0.7);
        SmithForm f = smith_normal_form(m, {true, true, true});
        ASSERT_EQ(f.U * m * f.V, f.D) << "trial " << trial;
        ASSERT_EQ(abs_value(determinant(f.U)), 1);
        ASSERT_EQ(abs_value(determinant(f.V)), 1);
        ASSERT_EQ(f.V * *f.Vinv, IntMatrix::identity(c));
        ASSERT_TRUE(is_smith_diagonal(f));
    }
}

TEST(SmithForm, AgreesWithDeterminantalDivisors) {
    Rng rng(77);
    std::uniform_int_distribution<std::size_t> dim(1, 4);
    for (int trial = 0; trial < 150; ++trial) {
        IntMatrix m = random_matrix(rng, dim(rng), dim(rng), 9, 0.8);
        SmithForm f = smith_normal_form(m);
        std::vector<Integer> got;
        for (std::size_t i = 0; i < f.rank; ++i) got.push_back(f.diag(i));
        ASSERT_EQ(got, invariants_from_minors(m)) << "trial " << trial;
    }
}

TEST(SmithForm, ModularRouteMatchesEuclidean) {
    Rng rng(4242);
    std::uniform_int_distribution<std::size_t> dim(kModularThreshold, kModularThreshold + 8);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t r = dim(rng), c = trial % 3 == 0 ? r : dim(rng);
        IntVector diag(r, Integer(1));
        for (std::size_t i = 0; i < r; ++i) diag[i] = (i % 5 == 0) ? 2 : (i % 7 == 0 ? 6 : (i % 11 == 0 ? 9 : 1));
        IntMatrix left = random_matrix(rng, r, r, 2), right = random_matrix(rng, r, c, 2);
        IntMatrix m = trial % 2 ? left * IntMatrix::diagonal(diag) * right
                                : transpose_of(right) * IntMatrix::diagonal(diag) * left;
        SmithForm mod = smith_normal_form(m, {false, false, false});
        SmithForm euc = smith_normal_form(m, {false, true, false});
        ASSERT_EQ(mod.rank, euc.rank) << "trial " << trial;
        ASSERT_EQ(mod.D, euc.D) << "trial " << trial;
    }
}

TEST(SmithForm, DeterministicOutput) {
    Rng rng(5);
    IntMatrix m = random_matrix(rng, 6, 5, 4);
    SmithForm a = smith_normal_form(m), b = smith_normal_form(m);
    EXPECT_EQ(a.U, b.U);
    EXPECT_EQ(a.V, b.V);
}

TEST(SmithForm, LargeEntriesTakeTheBigIntegerPath) {
    Integer big = Integer(1) << 80;
    IntMatrix m{{1, 0}, {0, 1}};
    m(0, 0) = big;
    m(1, 1) = big * 3;
    SmithForm f = smith_normal_form(m);
    EXPECT_EQ(f.diag(0), big);
    EXPECT_EQ(f.diag(1), big * 3);
    EXPECT_EQ(f.U * m * f.V, f.D);
}

TEST(FinAbGroup, QuotientPresentations) {
    EXPECT_EQ(quotient_presentation(1, IntMatrix{{5}}).str(), "Z_5");
    EXPECT_EQ(quotient_presentation(2, IntMatrix{{5, 0}, {0, 5}}).str(), "Z_5^2");
    EXPECT_EQ(quotient_presentation(2, IntMatrix{{1, 1}}).str(), "Z");
    EXPECT_EQ(quotient_presentation(2, IntMatrix{{2, 0}, {0, 3}}).str(), "Z_6");
    EXPECT_TRUE(quotient_presentation(1, IntMatrix{{-1}}).is_trivial());
}

TEST(FinAbGroup, CanonicalFormIsIdempotent) {
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        IntMatrix m = random_matrix(rng, 4, 4, 8, 0.6);
        FinAbGroup g = quotient_presentation(4, m);
        EXPECT_EQ(Presentation::of(g).group(), g);
    }
}

TEST(FinAbGroup, SumsAndTensors) {
    FinAbGroup z2 = make_group(0, {2}), z3 = make_group(0, {3}), z4 = make_group(0, {4});
    EXPECT_EQ(direct_sum(z2, z3).str(), "Z_6");
    EXPECT_EQ(tensor(z2, z4).str(), "Z_2");
    EXPECT_EQ(tensor(z2, z3).str(), "0");
    EXPECT_EQ(tensor(make_group(1), z4).str(), "Z_4");
    EXPECT_EQ(direct_sum(make_group(1), make_group(0, {2, 2})).str(), "Z + Z_2^2");
    EXPECT_TRUE(direct_sum(z2, z4).has_two_torsion());
    EXPECT_TRUE(z4.killed_by(4));
    EXPECT_FALSE(z4.killed_by(2));
}

TEST(GroupMap, CokernelsOfSmallMaps) {
    auto z = Presentation::free(1);
    EXPECT_EQ(cokernel(GroupMap::scalar(z, 2)).str(), "Z_2");
    auto z2 = Presentation::free(2);
    // 1 + swap on Z^2
    GroupMap f(z2, z2, IntMatrix{{1, 1}, {1, 1}});
    EXPECT_EQ(cokernel(f).str(), "Z");
    EXPECT_EQ(kernel(f).str(), "Z");
    EXPECT_EQ(image(f).str(), "Z");
}

TEST(GroupMap, TorsionKernelsAndImages) {
    auto z4 = Presentation::cyclic({4});
    GroupMap twice = GroupMap::scalar(z4, 2);
    EXPECT_EQ(kernel(twice).str(), "Z_2");
    EXPECT_EQ(image(twice).str(), "Z_2");
    EXPECT_EQ(cokernel(twice).str(), "Z_2");
    // Z_4 -> Z_2, reduction
    GroupMap red(z4, Presentation::cyclic({2}), IntMatrix{{1}});
    EXPECT_TRUE(is_surjective(red));
    EXPECT_FALSE(is_injective(red));
    // Z_2 -> Z_4 by 1 is not well formed.
    GroupMap bad(Presentation::cyclic({2}), z4, IntMatrix{{1}});
    EXPECT_THROW(kernel(bad), StructuralError);
}

TEST(GroupMap, CompositionAgreesWithSequentialQuotients) {
    Rng rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        IntMatrix first = random_matrix(rng, 2, 4, 5), second = random_matrix(rng, 2, 4, 5);
        Presentation mid(4, first);
        // Quotient by `first`, then by the image of `second` in that quotient.
        GroupMap f(Presentation::free(2), mid, second);
        FinAbGroup sequential = cokernel(f);
        FinAbGroup at_once = quotient_presentation(4, stack(first, second));
        ASSERT_EQ(sequential, at_once) << "trial " << trial;
        // The composite Z^2 -> Z^4 -> mid has the same cokernel.
        GroupMap g(Presentation::free(2), Presentation::free(2), random_unimodular(rng, 2, 6));
        GroupMap into_mid(Presentation::free(2), mid, second);
        ASSERT_EQ(cokernel(compose(into_mid, g)), sequential);
    }
}

TEST(GroupMap, RankNullityOverQ) {
    Rng rng(123);
    std::uniform_int_distribution<std::size_t> dim(1, 5);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t s = dim(rng), t = dim(rng);
        // Torsion in the target does not change ranks, so add some.
        Presentation tgt(t, random_matrix(rng, 1, t, 3, 0.5));
        GroupMap f(Presentation::free(s), tgt, random_matrix(rng, s, t, 4, 0.7));
        ASSERT_EQ(kernel(f).free_rank + image(f).free_rank, s) << "trial " << trial;
    }
}

TEST(Lattice, MembershipAndSolving) {
    IntMatrix gens{{2, 0}, {0, 3}};
    EXPECT_TRUE(in_row_span(gens, {4, 9}));
    EXPECT_FALSE(in_row_span(gens, {1, 3}));
    auto w = solve_left(gens, {4, 9});
    ASSERT_TRUE(w);
    EXPECT_EQ(row_times(*w, gens), (IntVector{4, 9}));
    IntMatrix k = left_kernel(IntMatrix{{1, 2}, {2, 4}, {0, 1}});
    ASSERT_EQ(k.rows(), 1u);
    EXPECT_TRUE((k * IntMatrix{{1, 2}, {2, 4}, {0, 1}}).is_zero());
}

TEST(NormalForm, CoordinatesAreCanonical) {
    Presentation p(3, IntMatrix{{2, 0, 0}, {0, 5, 5}});
    NormalForm nf(p);
    EXPECT_EQ(nf.group().str(), "Z + Z_10");
    Rng rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        IntVector x = random_matrix(rng, 1, 3, 20).row(0);
        IntVector y = x;
        y[0] += 2 * (trial % 3);
        y[1] += 5;
        y[2] += 5;
        ASSERT_EQ(nf.coords(x), nf.coords(y));
        ASSERT_TRUE(p.equal(nf.element(nf.coords(x)), x));
    }
}

TEST(Performance, DenseInvariantFactorsUnderASecond) {
    Rng rng(2025);
    IntMatrix m = random_matrix(rng, 200, 200, 10);
    auto t0 = std::chrono::steady_clock::now();
    FinAbGroup g = quotient_presentation(200, m);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    EXPECT_EQ(g.free_rank, 0u);
    EXPECT_LT(secs, 1.0);
}

TEST(Performance, RelationLatticeWithTransformsUnderASecond) {
    // Monomial multiples of ten relations in two variables inside the box
    // [0,12]^2: the largest lattice the ring computations build.
    using Term = std::pair<std::pair<int, int>, int>;
    const std::vector<std::vector<Term>> rels = {
        {{{3, 0}, 5}}, {{{4, 0}, 5}}, {{{5, 0}, 1}}, {{{0, 3}, 1}}, {{{1, 2}, 1}}, {{{3, 1}, 1}},
        {{{0, 2}, 1}, {{4, 0}, -1}}, {{{0, 1}, 1}, {{2, 0}, -1}, {{3, 0}, 1}, {{4, 0}, -1}},
        {{{1, 1}, 1}, {{3, 0}, -1}, {{4, 0}, 1}}, {{{2, 1}, 1}, {{4, 0}, -1}}};
    const int w = 12, side = w + 1;
    IntMatrix m(0, side * side);
    for (const auto& rel : rels) {
        int du = 0, dy = 0;
        for (const auto& [e, c] : rel) du = std::max(du, e.first), dy = std::max(dy, e.second);
        for (int a = 0; a + du <= w; ++a)
            for (int b = 0; b + dy <= w; ++b) {
                IntVector row(side * side);
                for (const auto& [e, c] : rel) row[(a + e.first) * side + b + e.second] = c;
                m.append_row(row);
            }
    }
    auto t0 = std::chrono::steady_clock::now();
    SmithForm f = smith_normal_form(m, {false, true, true});
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    FinAbGroup g = quotient_presentation(side * side, m);
    EXPECT_EQ(g.str(), "Z^3 + Z_5^2");
    EXPECT_EQ(f.V * *f.Vinv, IntMatrix::identity(side * side));
    EXPECT_LT(secs, 1.0);
}
