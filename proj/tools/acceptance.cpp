// Runs the twelve acceptance checks and prints one PASS/FAIL line each.
// Exit status 0 iff every check passes.

#include "kring/ahss.hpp"
#include "kring/b13.hpp"
#include "kring/berger.hpp"
#include "kring/charclass.hpp"
#include "kring/charring.hpp"
#include "kring/criteria.hpp"
#include "kring/exactlin.hpp"
#include "kring/tate.hpp"
#include "support.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

using namespace kring;
using kring::testing::Rng;

namespace {

// Collects the first failed expectation of a check.
struct Probe {
    std::string failure;
    void expect(bool ok, const std::string& what) {
        if (!ok && failure.empty()) failure = what;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const BergerModels& models() {
    static const BergerModels m = build_berger_models();
    return m;
}

void k_ring_from_first_principles(Probe& p) {
    const auto t0 = std::chrono::steady_clock::now();
    const KRingModel k = build_k_model(12);
    const double secs = seconds_since(t0);
    p.expect(k.quotient.group.str() == "Z^3 + Z_5^2", "K = " + k.quotient.group.str());
    p.expect(k.ring.violation().empty(), "ring axioms: " + k.ring.violation());
    p.expect(is_injective(k.basis_change) && is_surjective(k.basis_change), "1, u, y, u^3, u^4 is not a basis");
    p.expect(secs < 5.0, "took " + std::to_string(secs) + " s");
}

void k_ring_relations(Probe& p) {
    const FiniteRingModel& K = models().K();
    for (const Character& r : displayed_k_presentation().relations)
        p.expect(K.is_zero(evaluate_uy(K, r)), "relation " + r.str({"u", "y"}) + " is not zero");
    p.expect(K.str(K.mul(K["u"], K["u"])) == "y + u^3 + 4*u^4", "u^2");
    p.expect(K.str(K.mul(K["y"], K["y"])) == "u^4", "y^2");
    const FiniteRingModel d = displayed_k_model();
    p.expect(d.mult == K.mult && d.order == K.order, "displayed presentation gives a different ring");
    const GroupMap& b = models().k.basis_change;
    p.expect(b.matrix.rows() == 5 && is_injective(b) && is_surjective(b), "basis change is not an isomorphism");
}

void ko_model(Probe& p) {
    const BergerModels& m = models();
    p.expect(m.ko.violation().empty(), "KO ring: " + m.ko.violation());
    std::size_t identities = 0;
    for (const auto& c : verify_structure_identities(m)) {
        p.expect(c.holds, c.name + " fails at " + c.witness);
        identities += c.holds;
    }
    p.expect(identities >= 9, "fewer than nine identities hold");
    p.expect(reduced_realification_cokernel(m) == make_group(0, {2}), "coker r");
}

void phi_laws(Probe& p) {
    const BergerModels& m = models();
    const PhiLawReport r = check_phi_laws(m, standard_phi(m), 20240611, 200);
    p.expect(r.pairs == 200, "pairs");
    p.expect(r.all_hold(), "phi law fails: " + r.first_failure);
    p.expect(r.image_in_image_of_r, "phi leaves im r");
    p.expect(r.misses_w, "w is in im phi");
}

void image_alpha(Probe& p) {
    const BergerModels& m = models();
    const ImageAlphaReport r = image_alpha_O(m, standard_phi(m), 20240611);
    p.expect(r.index() == 2, "index " + r.index().str());
    p.expect(r.holds(), "image of alpha_O is not the index-2 subring");
    p.expect(r.annihilates_w, "S w != 0");
}

void pontryagin_and_wu(Probe& p) {
    for (int sign : {1, -1}) {
        const PontryaginScan s = pontryagin_scan(sign);
        p.expect(s.scanned == 100, "scanned " + std::to_string(s.scanned));
        p.expect(s.trivial_nonzero == std::vector<std::array<int, 3>>{{0, 0, 1}}, "scan finds more than w");
    }
    // Mod 2 the two signs of c_1 agree, so one computation covers both.
    SteenrodRing b = b13_mod2(), rp5 = real_projective_space(5);
    const TruncGradedRing& r = b.ring;
    p.expect(r.equal(r.scale(-1, r["beta"]), r["beta"]), "signs differ mod 2");
    RingRestriction i = b13_fibre_restriction(b, rp5);
    const IntVector v = wu_classes(b, sw_from_fibre(i, sw_from_wu(rp5, wu_classes(rp5))));
    p.expect(r.equal(v, r.add(r.one(), r["beta"])), "Wu class " + r.str(v));
    const IntVector w = sw_from_wu(b, v);
    p.expect(r.equal(w, r.add(r.one(), r.add(r["beta"], r["beta^2"]))), "w = " + r.str(w));
}

// Expected KO E2 for B^13: "." is 0, "2" is Z_2, "5" is Z_5.
void ahss_grid(Probe& p) {
    const char* const grid[] = {"Z.Z.Z.5.5Z.Z.Z", "2.2.2....2.2.2", "2.2.2....2.2.2", "..............",
                                "Z.Z.Z.5.5Z.Z.Z", "..............", "..............", "..............",
                                "Z.Z.Z.5.5Z.Z.Z", "2.2.2....2.2.2", "2.2.2....2.2.2", "..............",
                                "Z.Z.Z.5.5Z.Z.Z", ".............."};
    auto cell = [](char c) {
        return c == 'Z' ? make_group(1) : c == '2' ? make_group(0, {2}) : c == '5' ? make_group(0, {5}) : FinAbGroup{};
    };
    const std::set<std::pair<int, int>> vanish{{2, -1}, {4, -1},  {11, -1}, {13, -1}, {4, -2},  {13, -2},
                                               {2, -9}, {4, -9},  {11, -9}, {13, -9}, {4, -10}, {13, -10}};
    const std::set<std::pair<int, int>> index_two{{2, 0}, {11, 0}, {2, -8}, {11, -8}};
    const Page e2 = build_e2(b13_cohomology(), Theory::KO);
    const Page e3 = d2_ko(e2);
    p.expect(differentials_square_to_zero(e3), "d2 d2 != 0");
    for (int q = 0; q >= -13; --q)
        for (int pp = 0; pp <= 13; ++pp) {
            const std::string at = "(" + std::to_string(pp) + "," + std::to_string(q) + ")";
            const FinAbGroup before = e2.group(pp, q);
            p.expect(before == cell(grid[-q][pp]), "E2" + at + " = " + before.str());
            const PageEntry after = e3.at(pp, q);
            p.expect(vanish.count({pp, q}) ? after.group.is_trivial() : after.group == before, "E3" + at);
            if (before.free_rank)
                p.expect(after.cycle_index == (index_two.count({pp, q}) ? 2 : 1), "d2 cycles at " + at);
        }
}

void flag_enumeration(Probe& p) {
    const auto found = enumerate_flag_products(standard_flag_catalog(8), 5);
    std::set<std::vector<std::string>> got;
    std::size_t singles = 0;
    for (const auto& f : found) {
        got.insert(f.names());
        singles += f.factors.size() == 1;
    }
    const std::set<std::vector<std::string>> want{
        {"SU(2)"}, {"SU(3)"}, {"SU(4)"}, {"SU(5)"}, {"SU(7)"}, {"Spin(7)"}, {"G2"},
        {"SU(2)", "SU(2)"}, {"SU(2)", "SU(2)", "SU(2)"}, {"SU(3)", "SU(3)"}, {"SU(3)", "SU(3)", "SU(3)"},
        {"SU(3)", "SU(4)"}, {"SU(3)", "SU(5)"}, {"G2", "SU(3)"}};
    p.expect(singles == 7 && found.size() == 14, std::to_string(singles) + " singletons, " +
                                                     std::to_string(found.size() - singles) + " products");
    p.expect(got == want, "products differ from the list");
}

void dim7_verdicts(Probe& p) {
    for (const auto& t : dim7_table()) {
        const Verdict v = dim7_realification_surjective(t).verdict;
        p.expect(v == (t.name == "Wu" ? Verdict::not_surjective : Verdict::surjective), t.name + ": " + to_string(v));
    }
    const S2WuAnalysis a = s2_times_wu();
    p.expect(a.reduction_cokernel == make_group(0, {2}), "S^2 x Wu: coker red = " + a.reduction_cokernel.str());
    p.expect(a.w2_generates, "w_2 does not generate the cokernel");
}

void sphere_paths(Probe& p) {
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t cases = 0;
    std::vector<int> dims;
    std::function<void(int, int)> walk = [&](int lo, int left) {
        if (!dims.empty()) {
            ++cases;
            p.expect(sphere_ko_trivial_by_residues(dims) == sphere_ko_trivial_by_ahss(dims), "paths disagree");
        }
        for (int n = lo; n <= left; ++n) {
            dims.push_back(n);
            walk(n, left - n);
            dims.pop_back();
        }
    };
    walk(1, 24);
    // The residue patterns with trivial reduced KO, found by the spectral sequence alone.
    std::set<std::vector<int>> found;
    std::function<void(int, int)> residues = [&](int lo, int len) {
        if (!dims.empty() && sphere_ko_trivial_by_ahss(dims)) found.insert(dims);
        if (len == 4) return;
        for (int n = lo; n <= 8; ++n) {
            dims.push_back(n);
            residues(n, len + 1);
            dims.pop_back();
        }
    };
    residues(1, 0);
    p.expect(found == std::set<std::vector<int>>{{3}, {5}, {6}, {7}, {3, 3}, {5, 6}, {6, 7}, {7, 7}, {7, 7, 7}},
             "lemma list differs");
    const double secs = seconds_since(t0);
    p.expect(cases > 5000, "only " + std::to_string(cases) + " tuples");
    p.expect(secs < 10.0, "took " + std::to_string(secs) + " s");
}

void tate(Probe& p) {
    for (const auto& g : {su(2), su(3), su(4), su(5), sp(2), spin_odd(3), spin_even(4), g2(), circle(),
                          product(su(3), su(3))}) {
        const InvolutiveModule m = representation_ring_model(g, 3);
        p.expect(h_minus(m).is_trivial(), "h- of R(" + g.name + ")");
    }
    Rng rng(4242);
    for (int trial = 0; trial < 50; ++trial) {
        const InvolutiveRing a = kring::testing::random_free_ring(rng, 6), b = kring::testing::random_free_ring(rng, 6);
        p.expect(a.violation().empty() && b.violation().empty(), "random ring is not a ring");
        const KunnethReport r = kunneth_check(a, b);
        p.expect(r.holds(), "Kunneth fails on trial " + std::to_string(trial));
        for (const auto& g : {r.plus_direct, r.minus_direct, h_plus(a.module), h_minus(a.module)})
            p.expect(g.killed_by(2), "2 h != 0 on trial " + std::to_string(trial));
    }
}

void properties(Probe& p) {
    Rng rng(20240601);
    std::uniform_int_distribution<std::size_t> dim(1, 7);
    for (int trial = 0; trial < 500; ++trial) {
        const IntMatrix m = kring::testing::random_matrix(rng, dim(rng), dim(rng), 6, 0.7);
        const SmithForm f = smith_normal_form(m, {true, true, true});
        p.expect(f.U * m * f.V == f.D && kring::testing::is_smith_diagonal(f), "SNF trial " + std::to_string(trial));
        p.expect(abs_value(determinant(f.U)) == 1 && abs_value(determinant(f.V)) == 1, "SNF transforms");
    }
    using kring::testing::random_character;
    for (int trial = 0; trial < 100; ++trial) {
        const Character a = random_character(rng, 2, 3, 2, true), b = random_character(rng, 2, 3, 2, true);
        const auto la = lambda_series_effective(a, 4), lb = lambda_series_effective(b, 4);
        const auto lab = lambda_series_effective(a + b, 4);
        for (unsigned k = 0; k <= 4; ++k) {
            Character sum(2);
            for (unsigned i = 0; i <= k; ++i) sum += la[i] * lb[k - i];
            p.expect(lab[k] == sum, "lambda_t not multiplicative");
        }
    }
    const auto pair = berger_b13();
    for (int trial = 0; trial < 100; ++trial) {
        const Character a = random_character(rng, 4, 4, 2, false), b = random_character(rng, 4, 4, 2, false);
        p.expect(restrict(a * b, pair.restriction) == restrict(a, pair.restriction) * restrict(b, pair.restriction),
                 "restriction is not multiplicative");
        p.expect(restrict(a + b, pair.restriction) == restrict(a, pair.restriction) + restrict(b, pair.restriction),
                 "restriction is not additive");
    }
    for (int trial = 0; trial < 200; ++trial) {
        const Character a = random_character(rng, 3, 5, 3, false), b = random_character(rng, 3, 5, 3, false);
        p.expect(conjugate(conjugate(a)) == a, "conjugation is not an involution");
        p.expect(conjugate(a * b) == conjugate(a) * conjugate(b), "conjugation is not multiplicative");
    }
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Probe&)>>> checks{
        {"K(B^13) from representation rings", k_ring_from_first_principles},
        {"K-ring relations and basis change", k_ring_relations},
        {"KO model, identities, coker r", ko_model},
        {"phi laws on 200 seeded pairs", phi_laws},
        {"image of alpha_O has index 2", image_alpha},
        {"Pontryagin scan and Wu classes", pontryagin_and_wu},
        {"KO spectral sequence E2 and d2", ahss_grid},
        {"flag manifold enumeration", flag_enumeration},
        {"dimension <= 7 verdicts", dim7_verdicts},
        {"sphere products up to dimension 24", sphere_paths},
        {"Tate cohomology", tate},
        {"property suites", properties},
    };
    const auto start = std::chrono::steady_clock::now();
    int failed = 0;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        Probe p;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            checks[i].second(p);
        } catch (const std::exception& e) {
            p.expect(false, std::string("exception: ") + e.what());
        }
        const double secs = seconds_since(t0);
        failed += !p.failure.empty();
        std::cout << (p.failure.empty() ? "PASS" : "FAIL") << "  " << std::setw(2) << i + 1 << "  "
                  << checks[i].first << "  (" << std::fixed << std::setprecision(2) << secs << " s)";
        if (!p.failure.empty()) std::cout << "  " << p.failure;
        std::cout << "\n";
    }
    std::cout << (checks.size() - failed) << "/" << checks.size() << " passed in " << std::fixed
              << std::setprecision(2) << seconds_since(start) << " s\n";
    return failed ? 1 : 0;
}
