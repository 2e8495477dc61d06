#pragma once

// Multi-modular invariant factors of full-rank integer matrices.
//
// The exact Euclidean Smith form suffers coefficient growth on dense input.
// When only the diagonal is wanted and the matrix has full rank, we instead
//   1. pick a nonsingular maximal minor by elimination mod a word prime,
//   2. recover N = |that minor| by CRT up to the Hadamard bound,
//   3. diagonalize over Z/N.
// Every invariant factor divides every maximal minor, so gcd(e_i, N) over
// Z/N is the exact invariant d_i.

#include "kring/bigint.hpp"

#include <gmp.h>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace kring::detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Montgomery arithmetic modulo an odd p < 2^62; values live in [0, p).
class Montgomery {
public:
    explicit Montgomery(u64 p) : p_(p) {
        u64 inv = p;
        for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
        neg_inv_ = ~inv + 1;
        u64 r1 = static_cast<u64>((static_cast<u128>(1) << 64) % p);
        r2_ = static_cast<u64>(static_cast<u128>(r1) * r1 % p);
    }
    u64 modulus() const { return p_; }
    u64 reduce(u128 t) const {
        u64 m = static_cast<u64>(t) * neg_inv_;
        u64 r = static_cast<u64>((t + static_cast<u128>(m) * p_) >> 64);
        return r >= p_ ? r - p_ : r;
    }
    u64 mul(u64 a, u64 b) const { return reduce(static_cast<u128>(a) * b); }
    u64 to(u64 x) const { return mul(x % p_, r2_); }
    u64 from(u64 x) const { return reduce(x); }
    u64 add(u64 a, u64 b) const {
        u64 s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
    u64 pow(u64 a, u64 e) const {
        u64 r = to(1);
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    u64 inverse(u64 a) const { return pow(a, p_ - 2); }

private:
    u64 p_, neg_inv_, r2_;
};

inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL})
        if (n % q == 0) return n == q;
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    Montgomery mg(n);
    const u64 one = mg.to(1), minus_one = mg.to(n - 1);
    // These bases are deterministic for all 64-bit n.
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = mg.pow(mg.to(a), d);
        if (x == one || x == minus_one) continue;
        bool composite = true;
        for (int i = 1; i < s && composite; ++i) {
            x = mg.mul(x, x);
            if (x == minus_one) composite = false;
        }
        if (composite) return false;
    }
    return true;
}

// The 160 largest primes below 2^62, enough for determinants of ~9900 bits.
inline const std::vector<u64>& word_primes() {
    static const std::vector<u64> primes = [] {
        std::vector<u64> out;
        for (u64 n = (1ULL << 62) - 1; out.size() < 160; n -= 2)
            if (is_prime_u64(n)) out.push_back(n);
        return out;
    }();
    return primes;
}

inline u64 residue(const Integer& x, u64 p) {
    return mpz_fdiv_ui(x.backend().data(), static_cast<unsigned long>(p));
}

struct ModPivots {
    std::vector<std::size_t> rows, cols;
};

// Row-echelon elimination mod p; returns the pivot rows (in selection order)
// and pivot columns. The minor on them is nonzero mod p, hence over Z.
inline ModPivots pivots_mod_p(const std::vector<Integer>& a, std::size_t r, std::size_t c, u64 p) {
    Montgomery mg(p);
    std::vector<u64> m(r * c);
    for (std::size_t i = 0; i < r * c; ++i) m[i] = mg.to(residue(a[i], p));
    std::vector<std::size_t> perm(r);
    for (std::size_t i = 0; i < r; ++i) perm[i] = i;
    ModPivots out;
    std::size_t rank = 0;
    for (std::size_t j = 0; j < c && rank < r; ++j) {
        std::size_t piv = rank;
        while (piv < r && m[piv * c + j] == 0) ++piv;
        if (piv == r) continue;
        if (piv != rank) {
            for (std::size_t k = 0; k < c; ++k) std::swap(m[piv * c + k], m[rank * c + k]);
            std::swap(perm[piv], perm[rank]);
        }
        const u64 inv = mg.inverse(m[rank * c + j]);
        for (std::size_t i = rank + 1; i < r; ++i) {
            u64 f = m[i * c + j];
            if (f == 0) continue;
            f = mg.mul(f, inv);
            for (std::size_t k = j; k < c; ++k)
                if (m[rank * c + k]) m[i * c + k] = mg.sub(m[i * c + k], mg.mul(f, m[rank * c + k]));
        }
        out.rows.push_back(perm[rank]);
        out.cols.push_back(j);
        ++rank;
    }
    return out;
}

// det(B) mod p and det(B)·B^{-1}e_last mod p, the cofactors of the last row
// up to sign. nullopt when p divides det(B).
inline std::optional<std::pair<u64, std::vector<u64>>> det_cofactors_mod_p(const std::vector<Integer>& a,
                                                                            std::size_t n, u64 p) {
    Montgomery mg(p);
    const std::size_t w = n + 1;  // augmented with e_last
    std::vector<u64> m(n * w, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i * w + j] = mg.to(residue(a[i * n + j], p));
    m[(n - 1) * w + n] = mg.to(1);
    u64 det = mg.to(1);
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t piv = j;
        while (piv < n && m[piv * w + j] == 0) ++piv;
        if (piv == n) return std::nullopt;
        if (piv != j) {
            for (std::size_t k = 0; k < w; ++k) std::swap(m[piv * w + k], m[j * w + k]);
            det = mg.sub(0, det);
        }
        det = mg.mul(det, m[j * w + j]);
        const u64 inv = mg.inverse(m[j * w + j]);
        for (std::size_t i = j + 1; i < n; ++i) {
            u64 f = m[i * w + j];
            if (f == 0) continue;
            f = mg.mul(f, inv);
            for (std::size_t k = j; k < w; ++k)
                if (m[j * w + k]) m[i * w + k] = mg.sub(m[i * w + k], mg.mul(f, m[j * w + k]));
        }
    }
    std::vector<u64> x(n);
    for (std::size_t i = n; i-- > 0;) {
        u64 acc = m[i * w + n];
        for (std::size_t k = i + 1; k < n; ++k) acc = mg.sub(acc, mg.mul(m[i * w + k], x[k]));
        x[i] = mg.mul(acc, mg.inverse(m[i * w + i]));
    }
    for (auto& v : x) v = mg.from(mg.mul(v, det));
    return std::make_pair(mg.from(det), std::move(x));
}

// |det B| and the last-row cofactors of B (up to sign) by CRT over word
// primes, stopping once the modulus exceeds twice the Hadamard bound, which
// bounds the cofactors too. nullopt if the prime supply runs out.
inline std::optional<std::pair<Integer, std::vector<Integer>>> det_cofactors_multimodular(
    const std::vector<Integer>& a, std::size_t n) {
    Integer h2 = 1;  // Hadamard bound squared
    for (std::size_t i = 0; i < n; ++i) {
        Integer s = 0;
        for (std::size_t j = 0; j < n; ++j) s += a[i * n + j] * a[i * n + j];
        h2 *= s;
    }
    std::vector<Integer> x(n + 1, Integer(0));  // det first, then cofactors
    Integer mod = 1;
    for (u64 p : word_primes()) {
        auto res = det_cofactors_mod_p(a, n, p);
        if (!res) continue;
        Montgomery mg(p);
        const u64 minv = mg.inverse(mg.to(residue(mod, p)));
        for (std::size_t k = 0; k <= n; ++k) {
            const u64 rp = k == 0 ? res->first : res->second[k - 1];
            u64 t = mg.mul(mg.sub(mg.to(rp), mg.to(residue(x[k], p))), minv);
            x[k] += mod * Integer(mg.from(t));
        }
        mod *= p;
        if (mod * mod > 4 * h2) {
            for (auto& v : x)
                if (2 * v > mod) v = mod - v;
            Integer det = x[0];
            x.erase(x.begin());
            return std::make_pair(det, std::move(x));
        }
    }
    return std::nullopt;
}

// |det| by CRT; see det_cofactors_multimodular.
inline std::optional<Integer> abs_det_multimodular(const std::vector<Integer>& a, std::size_t n) {
    auto r = det_cofactors_multimodular(a, n);
    if (!r) return std::nullopt;
    return r->first;
}

// Extended gcd on integers: s*a + t*b = g >= 0.
inline void ext_gcd(const Integer& a, const Integer& b, Integer& g, Integer& s, Integer& t) {
    mpz_gcdext(g.backend().data(), s.backend().data(), t.backend().data(), a.backend().data(),
               b.backend().data());
}

// Diagonal entries e_i with A ~ diag(e_i) over Z/N; not yet a divisor chain.
inline std::vector<Integer> diagonalize_mod(std::vector<Integer> a, std::size_t r, std::size_t c, const Integer& N) {
    auto A = [&](std::size_t i, std::size_t j) -> Integer& { return a[i * c + j]; };
    mpz_srcptr n = N.backend().data();
    for (auto& x : a) mpz_fdiv_r(x.backend().data(), x.backend().data(), n);
    const std::size_t steps = std::min(r, c);
    std::vector<Integer> diag;
    Integer g, s, t, tmp, u, v;
    bool units_gone = false;  // once no unit pivot exists, skip the search

    // new_i = x*row_i + y*row_k ; new_k = z*row_i + w*row_k  (columns >= from)
    auto mix_rows = [&](std::size_t i, std::size_t k, const Integer& x, const Integer& y, const Integer& z,
                        const Integer& w, std::size_t from) {
        for (std::size_t j = from; j < c; ++j) {
            mpz_mul(u.backend().data(), x.backend().data(), A(i, j).backend().data());
            mpz_addmul(u.backend().data(), y.backend().data(), A(k, j).backend().data());
            mpz_mul(v.backend().data(), z.backend().data(), A(i, j).backend().data());
            mpz_addmul(v.backend().data(), w.backend().data(), A(k, j).backend().data());
            mpz_fdiv_r(A(i, j).backend().data(), u.backend().data(), n);
            mpz_fdiv_r(A(k, j).backend().data(), v.backend().data(), n);
        }
    };
    auto mix_cols = [&](std::size_t j, std::size_t k, const Integer& x, const Integer& y, const Integer& z,
                        const Integer& w, std::size_t from) {
        for (std::size_t i = from; i < r; ++i) {
            mpz_mul(u.backend().data(), x.backend().data(), A(i, j).backend().data());
            mpz_addmul(u.backend().data(), y.backend().data(), A(i, k).backend().data());
            mpz_mul(v.backend().data(), z.backend().data(), A(i, j).backend().data());
            mpz_addmul(v.backend().data(), w.backend().data(), A(i, k).backend().data());
            mpz_fdiv_r(A(i, j).backend().data(), u.backend().data(), n);
            mpz_fdiv_r(A(i, k).backend().data(), v.backend().data(), n);
        }
    };

    auto reduce = [&](Integer& x) { mpz_fdiv_r(x.backend().data(), x.backend().data(), n); };

    // Entries are reduced lazily: a unit step only needs its pivot row and
    // column reduced, and adds at most N^2 to any other entry.
    for (std::size_t step = 0; step < steps; ++step) {
        // Prefer a unit pivot: then the step is one scaled elimination.
        std::optional<std::pair<std::size_t, std::size_t>> unit, any;
        for (std::size_t i = step; i < r && !unit; ++i)
            for (std::size_t j = step; j < c; ++j) {
                reduce(A(i, j));
                if (A(i, j) == 0) continue;
                if (!any) any = {i, j};
                if (units_gone) break;
                mpz_gcd(g.backend().data(), A(i, j).backend().data(), n);
                if (g == 1) {
                    unit = {i, j};
                    break;
                }
            }
        if (!any) {
            diag.resize(steps, N);
            return diag;
        }
        if (!unit) units_gone = true;
        auto [pi, pj] = unit ? *unit : *any;
        if (pi != step)
            for (std::size_t j = 0; j < c; ++j) std::swap(A(pi, j), A(step, j));
        if (pj != step)
            for (std::size_t i = 0; i < r; ++i) std::swap(A(i, pj), A(i, step));

        if (unit) {
            mpz_invert(tmp.backend().data(), A(step, step).backend().data(), n);
            for (std::size_t j = step + 1; j < c; ++j) {
                mpz_mul(u.backend().data(), A(step, j).backend().data(), tmp.backend().data());
                mpz_fdiv_r(A(step, j).backend().data(), u.backend().data(), n);
            }
            for (std::size_t i = step + 1; i < r; ++i) {
                reduce(A(i, step));
                if (A(i, step) == 0) continue;
                for (std::size_t j = step + 1; j < c; ++j) {
                    if (A(step, j) == 0) continue;
                    mpz_submul(A(i, j).backend().data(), A(i, step).backend().data(), A(step, j).backend().data());
                }
            }
            diag.push_back(1);
            continue;
        }

        // General step: fold column and row into the pivot by 2x2 unimodular
        // moves until the pivot divides both.
        for (std::size_t i = step; i < r; ++i)
            for (std::size_t j = step; j < c; ++j) reduce(A(i, j));
        for (;;) {
            bool changed = false;
            for (std::size_t i = step + 1; i < r; ++i) {
                if (A(i, step) == 0) continue;
                const Integer p = A(step, step), q = A(i, step);
                if (p != 0 && q % p == 0) {
                    Integer f = -(q / p), one = 1, zero = 0;
                    mix_rows(i, step, one, f, zero, one, step);
                    continue;
                }
                ext_gcd(p, q, g, s, t);
                Integer x = -(q / g), w = p / g;
                mix_rows(step, i, s, t, x, w, step);
                changed = true;
            }
            for (std::size_t j = step + 1; j < c; ++j) {
                if (A(step, j) == 0) continue;
                const Integer p = A(step, step), q = A(step, j);
                if (p != 0 && q % p == 0) {
                    Integer f = -(q / p), one = 1, zero = 0;
                    mix_cols(j, step, one, f, zero, one, step);
                    continue;
                }
                ext_gcd(p, q, g, s, t);
                Integer x = -(q / g), w = p / g;
                mix_cols(step, j, s, t, x, w, step);
                changed = true;
            }
            if (!changed) break;
        }
        mpz_gcd(g.backend().data(), A(step, step).backend().data(), n);
        diag.push_back(g);
    }
    return diag;
}

// Turn a diagonal into the Smith divisor chain by pairwise gcd/lcm.
inline void divisor_chain(std::vector<Integer>& d) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] != 1) idx.push_back(i);
    std::vector<Integer> v;
    for (auto i : idx) v.push_back(d[i]);
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            Integer g = gcd(v[i], v[j]);
            if (g == 0) continue;
            Integer l = v[i] / g * v[j];
            v[i] = g;
            v[j] = abs_value(l);
        }
    std::vector<Integer> out(d.size() - v.size(), Integer(1));
    out.insert(out.end(), v.begin(), v.end());
    d = std::move(out);
}

// Invariant factors d_1 | ... | d_min(r,c) of a full-rank matrix, or nullopt
// when the matrix is rank deficient (mod the first prime) or too large.
inline std::optional<std::vector<Integer>> full_rank_invariants(const std::vector<Integer>& a, std::size_t r,
                                                                std::size_t c) {
    const std::size_t k = std::min(r, c);
    ModPivots piv = pivots_mod_p(a, r, c, word_primes().front());
    if (piv.rows.size() < k) return std::nullopt;
    std::vector<Integer> minor(k * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) minor[i * k + j] = a[piv.rows[i] * c + piv.cols[j]];
    auto dc = det_cofactors_multimodular(minor, k);
    if (!dc) return std::nullopt;
    const Integer& n = dc->first;
    if (n == 1) return std::vector<Integer>(k, Integer(1));

    auto solve_mod = [&](const Integer& m) {
        std::vector<Integer> d = diagonalize_mod(a, r, c, m);
        for (auto& x : d) x = (x == 0) ? m : gcd(x, m);
        divisor_chain(d);
        return d;
    };
    if (r != c) return solve_mod(n);

    // Square: d_1 ... d_{k-1} divides every (k-1)-minor, in particular g.
    // Generically g = 1 and the answer is (1, ..., 1, |det|).
    Integer g = 0;
    for (const auto& x : dc->second) g = gcd(g, x);
    std::vector<Integer> d(k, Integer(1));
    if (g != 1) {
        d = solve_mod(g);  // exact below the last slot, since d_i | g there
    }
    Integer head = 1;
    for (std::size_t i = 0; i + 1 < k; ++i) head *= d[i];
    d[k - 1] = n / head;
    return d;
}

}  // namespace kring::detail
