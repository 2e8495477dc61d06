#pragma once

#include "kring/charring.hpp"
#include "kring/exactlin.hpp"
#include "kring/tate.hpp"

#include <ostream>
#include <random>

namespace kring::testing {

// Every randomized test draws from one of these, seeded per test.
using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline IntMatrix random_matrix(Rng& rng, std::size_t r, std::size_t c, int bound, double density = 1.0) {
    std::uniform_int_distribution<int> val(-bound, bound);
    std::bernoulli_distribution keep(density);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (keep(rng)) m(i, j) = val(rng);
    return m;
}

// Product of elementary operations: unimodular, entries stay modest.
inline IntMatrix random_unimodular(Rng& rng, std::size_t n, int moves) {
    IntMatrix m = IntMatrix::identity(n);
    if (n < 2) return m;
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    std::uniform_int_distribution<int> q(-2, 2);
    for (int k = 0; k < moves; ++k) {
        std::size_t i = idx(rng), j = idx(rng);
        if (i == j) continue;
        Integer f = q(rng);
        for (std::size_t c = 0; c < n; ++c) m(i, c) += f * m(j, c);
    }
    return m;
}

inline Character random_character(Rng& rng, std::size_t rank, int terms, int spread, bool effective) {
    std::uniform_int_distribution<int> e(-spread, spread), k(effective ? 1 : -3, 3);
    Character c(rank);
    for (int i = 0; i < terms; ++i) {
        Exponent x(rank);
        for (auto& v : x) v = e(rng);
        c.add_term(x, k(rng));
    }
    return c;
}

// Diagonal, nonnegative, rank-many nonzero entries, each dividing the next.
inline bool is_smith_diagonal(const SmithForm& f) {
    const IntMatrix& d = f.D;
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j)
            if (i != j && d(i, j) != 0) return false;
    const std::size_t n = std::min(d.rows(), d.cols());
    for (std::size_t i = 0; i < n; ++i) {
        if (d(i, i) < 0) return false;
        if ((i < f.rank) != (d(i, i) != 0)) return false;
        if (i + 1 < f.rank && d(i + 1, i + 1) % d(i, i) != 0) return false;
    }
    return true;
}

// Free involutive rings for the Tate tests.

inline IntVector unit_vector(std::size_t n, std::size_t i) {
    IntVector e(n);
    e[i] = 1;
    return e;
}

// Z^n with coordinatewise product; T permutes the idempotents.
inline InvolutiveRing product_ring(const std::vector<std::size_t>& perm) {
    const std::size_t n = perm.size();
    InvolutiveRing r;
    IntMatrix t(n, n);
    for (std::size_t i = 0; i < n; ++i) t(i, perm[i]) = 1;
    r.module = InvolutiveModule::free(t);
    r.mult.assign(n * n, IntVector(n));
    for (std::size_t i = 0; i < n; ++i) r.mult[i * n + i] = unit_vector(n, i);
    r.unit.assign(n, 1);
    return r;
}

// Z[C_n] with g^k -> g^{s k}, s^2 = 1 mod n.
inline InvolutiveRing group_ring(std::size_t n, std::size_t s) {
    InvolutiveRing r;
    IntMatrix t(n, n);
    for (std::size_t k = 0; k < n; ++k) t(k, (s * k) % n) = 1;
    r.module = InvolutiveModule::free(t);
    r.mult.assign(n * n, IntVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r.mult[i * n + j] = unit_vector(n, (i + j) % n);
    r.unit = unit_vector(n, 0);
    return r;
}

// Z[x]/(x^k) with x -> x_image (coordinates in 1, x, ..., x^{k-1}).
inline InvolutiveRing truncated_ring(std::size_t k, const IntVector& x_image) {
    InvolutiveRing r;
    r.mult.assign(k * k, IntVector(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (i + j < k) r.mult[i * k + j] = unit_vector(k, i + j);
    r.unit = unit_vector(k, 0);
    r.module = InvolutiveModule::free(IntMatrix::identity(k));  // product() needs the rank
    IntMatrix t(k, k);
    IntVector power = unit_vector(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) t(i, j) = power[j];
        power = r.product(power, x_image);
    }
    r.module = InvolutiveModule::free(t);
    return r;
}

// K(CP^{k-1}) = Z[x]/(x^k), x = L - 1, with conjugation x -> (1+x)^{-1} - 1.
inline InvolutiveRing projective_space_ring(std::size_t k) {
    IntVector image(k);
    for (std::size_t i = 1; i < k; ++i) image[i] = i % 2 ? -1 : 1;
    return truncated_ring(k, image);
}

inline InvolutiveRing change_basis(const InvolutiveRing& r, const IntMatrix& p, const IntMatrix& p_inv) {
    const std::size_t n = r.gens();
    InvolutiveRing out;
    out.module = conjugate_by(r.module, p, p_inv);
    out.mult.assign(n * n, IntVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out.mult[i * n + j] = row_times(r.product(p.row(i), p.row(j)), p_inv);
    out.unit = row_times(r.unit, p_inv);
    return out;
}

inline IntMatrix inverse_unimodular(const IntMatrix& p) {
    const std::size_t n = p.rows();
    IntMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        auto x = solve_left(p, unit_vector(n, i));
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = (*x)[j];
    }
    return inv;
}

inline InvolutiveRing random_free_ring(Rng& rng, std::size_t max_rank) {
    std::uniform_int_distribution<int> family(0, 4);
    InvolutiveRing r;
    for (;;) {
        switch (family(rng)) {
            case 0: {
                std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_rank)(rng);
                std::vector<std::size_t> perm(n);
                for (std::size_t i = 0; i < n; ++i) perm[i] = i;
                for (std::size_t i = 0; i + 1 < n; i += 2)
                    if (rng() % 2) std::swap(perm[i], perm[i + 1]);
                r = product_ring(perm);
                break;
            }
            case 1: {
                std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_rank)(rng);
                std::vector<std::size_t> units;
                for (std::size_t s = 1; s <= n; ++s)
                    if ((s * s) % n == 1 % n) units.push_back(s % n == 0 ? 1 : s);
                r = group_ring(n, units[rng() % units.size()]);
                break;
            }
            case 2: {
                std::size_t k = std::uniform_int_distribution<std::size_t>(1, max_rank)(rng);
                IntVector img(k);
                if (k > 1) img[1] = -1;
                r = truncated_ring(k, img);
                break;
            }
            case 3:
                r = projective_space_ring(std::uniform_int_distribution<std::size_t>(1, max_rank)(rng));
                break;
            default: {
                if (max_rank < 4) continue;
                r = tensor_rings(random_free_ring(rng, 2), random_free_ring(rng, max_rank / 2));
                if (r.gens() > max_rank) continue;
            }
        }
        break;
    }
    IntMatrix p = random_unimodular(rng, r.gens(), 6);
    return change_basis(r, p, inverse_unimodular(p));
}

}  // namespace kring::testing

namespace kring {

// Readable gtest failure messages.
inline void PrintTo(const FinAbGroup& g, std::ostream* os) { *os << g.str(); }

}  // namespace kring
