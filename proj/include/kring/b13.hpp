#pragma once

// Cohomological input data for the 13-dimensional Berger space
// B^13 = SU(5) / (Sp(2) x_{Z_2} S^1).
//
// H*(B^13; Z) = Z[beta, gamma] / (5 beta^3, beta^5, gamma^2, gamma beta^3)
// with |beta| = 2, |gamma| = 9. Mod 2 it has classes 1, beta, beta^2, gamma,
// gamma beta, gamma beta^2, and Sq^2 sends beta to beta^2, gamma beta to
// gamma beta^2, and kills everything else.

#include "kring/ahss.hpp"
#include "kring/charclass.hpp"

namespace kring {

inline CohomologyTable b13_cohomology() {
    CohomologyTable t;
    t.name = "B^13";
    t.dimension = 13;
    t.integral.assign(14, FinAbGroup{});
    for (int p : {0, 2, 4, 9, 11, 13}) t.integral[static_cast<std::size_t>(p)] = make_group(1);
    for (int p : {6, 8}) t.integral[static_cast<std::size_t>(p)] = make_group(0, {5});
    for (int p = 0; p <= 13; ++p) t.sq2.emplace_back(IntMatrix(t.mod2_dim(p), t.mod2_dim(p + 2)));
    (*t.sq2[2])(0, 0) = 1;   // beta -> beta^2
    (*t.sq2[11])(0, 0) = 1;  // gamma beta -> gamma beta^2
    t.validate();
    return t;
}

// H*(B^13; Z) with basis 1, beta, ..., beta^4, gamma, gamma beta, gamma beta^2.
inline TruncGradedRing b13_integral_ring() {
    return monomial_ring("H*(B^13;Z)", {"gamma", "beta"}, {9, 2},
                         {{{0, 0}, 0}, {{0, 1}, 0}, {{0, 2}, 0}, {{0, 3}, 5}, {{0, 4}, 5},
                          {{1, 0}, 0}, {{1, 1}, 0}, {{1, 2}, 0}});
}

// H*(B^13; Z_2). Sq^1 vanishes (no 2-torsion, so every class lifts) and the
// degree rules force it; Sq^2 is recorded explicitly where the target is
// nonzero and the rules do not decide it. Sq^4 on gamma is left unknown.
inline SteenrodRing b13_mod2() {
    SteenrodRing s{monomial_ring("H*(B^13;Z_2)", {"gamma", "beta"}, {9, 2},
                                 {{{0, 0}, 2}, {{0, 1}, 2}, {{0, 2}, 2}, {{1, 0}, 2}, {{1, 1}, 2}, {{1, 2}, 2}}),
                   {}};
    const TruncGradedRing& r = s.ring;
    s.table[2][r.index("gamma")] = r.zero();
    s.table[2][r.index("gamma beta")] = r["gamma beta^2"];
    return s;
}

// Restriction to the RP^5 fibre of SU(5)/Sp(2) -> B^13 in mod-2 cohomology:
// beta restricts to a^2, and nothing above degree 4 survives.
inline RingRestriction b13_fibre_restriction(const SteenrodRing& b13, const SteenrodRing& rp5) {
    const TruncGradedRing& r = b13.ring;
    RingRestriction i{&b13.ring, &rp5.ring, std::vector<IntVector>(r.size(), rp5.ring.zero())};
    i.images[r.index("1")] = rp5.ring["1"];
    i.images[r.index("beta")] = rp5.ring["a^2"];
    i.images[r.index("beta^2")] = rp5.ring["a^4"];
    return i;
}

// The complexifications of y' and y'^2 as combinations of powers of the line
// bundle b, with y = b + b^-1 - 2.
inline LineCombination b13_complexified_y_prime() { return {{{1}, 1}, {{-1}, 1}, {{0}, -2}}; }
inline LineCombination b13_complexified_y_prime_squared() {
    return {{{2}, 1}, {{-2}, 1}, {{1}, -4}, {{-1}, -4}, {{0}, 6}};
}

// Total Pontryagin class of mu y' + nu y'^2 + delta w in reduced KO(B^13),
// with c_1(b) = sign * beta. The product rule is exact here since
// H^{4k}(B^13) has no 2-torsion; c(w) = 0 makes p(w) = 1.
inline IntVector b13_pontryagin(const Integer& mu, const Integer& nu, const Integer& delta, int sign = 1) {
    const TruncGradedRing r = b13_integral_ring();
    const std::vector<IntVector> c1{r.scale(sign, r["beta"])};
    IntVector p1 = pontryagin_from_chern(r, chern_of_combination(r, c1, b13_complexified_y_prime()));
    IntVector p2 = pontryagin_from_chern(r, chern_of_combination(r, c1, b13_complexified_y_prime_squared()));
    IntVector pw = pontryagin_from_chern(r, r.one());
    IntVector p = r.mul(class_power(r, p1, mu.convert_to<long long>()), class_power(r, p2, nu.convert_to<long long>()));
    return r.mul(p, class_power(r, pw, delta.convert_to<long long>()));
}

}  // namespace kring
