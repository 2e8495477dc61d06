#pragma once

// Tate cohomology of an involution: h+ = ker(1 - t) / im(1 + t) and
// h- = ker(1 + t) / im(1 - t).

#include "kring/charring.hpp"
#include "kring/exactlin.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace kring {

// An abelian group with an involution. T acts on row vectors of generator
// coordinates, like every GroupMap.
struct InvolutiveModule {
    Presentation group;
    IntMatrix T;

    InvolutiveModule() = default;
    InvolutiveModule(Presentation g, IntMatrix t) : group(std::move(g)), T(std::move(t)) {}

    static InvolutiveModule free(IntMatrix t) {
        std::size_t n = t.rows();
        return InvolutiveModule(Presentation::free(n), std::move(t));
    }

    std::size_t gens() const { return group.gens; }
    GroupMap map() const { return GroupMap(group, group, T); }

    // T preserves the relations and squares to the identity.
    void validate() const {
        GroupMap t = map();
        if (!t.well_formed()) throw StructuralError("involution does not preserve relations");
        IntMatrix sq = T * T - IntMatrix::identity(gens());
        if (!GroupMap(group, group, sq).is_zero()) throw StructuralError("T is not an involution");
    }
};

namespace detail {

inline FinAbGroup tate_group(const InvolutiveModule& m, int sign) {
    m.validate();
    const std::size_t n = m.gens();
    IntMatrix id = IntMatrix::identity(n);
    // h^{sign}: kernel of (1 - sign T) over image of (1 + sign T)
    IntMatrix ker_of = id - Integer(sign) * m.T;
    IntMatrix im_of = id + Integer(sign) * m.T;
    GroupMap k(m.group, m.group, ker_of), i(m.group, m.group, im_of);
    return subquotient(k.kernel_lattice(), i.image_lattice(), n);
}

}  // namespace detail

inline FinAbGroup h_plus(const InvolutiveModule& m) { return detail::tate_group(m, 1); }
inline FinAbGroup h_minus(const InvolutiveModule& m) { return detail::tate_group(m, -1); }

inline InvolutiveModule tensor_involutive(const InvolutiveModule& a, const InvolutiveModule& b) {
    return InvolutiveModule(tensor(a.group, b.group), kronecker(a.T, b.T));
}

// Base change by a unimodular P: the same module written in the basis P.
inline InvolutiveModule conjugate_by(const InvolutiveModule& m, const IntMatrix& p, const IntMatrix& p_inv) {
    return InvolutiveModule(Presentation(m.gens(), m.group.rels * p_inv), p * m.T * p_inv);
}

// A commutative ring, free or not as a group, with an involution. Products of
// generators: mult[i * n + j] holds the coordinates of g_i g_j.
struct InvolutiveRing {
    InvolutiveModule module;
    std::vector<IntVector> mult;
    IntVector unit;

    std::size_t gens() const { return module.gens(); }
    IntVector product(const IntVector& x, const IntVector& y) const {
        const std::size_t n = gens();
        IntVector out(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (y[j] == 0) continue;
                Integer c = x[i] * y[j];
                const IntVector& g = mult[i * n + j];
                for (std::size_t k = 0; k < n; ++k) out[k] += c * g[k];
            }
        }
        return out;
    }
    IntVector basis(std::size_t i) const {
        IntVector e(gens());
        e[i] = 1;
        return e;
    }

    // Commutative, associative, unital, and T is a ring map; all on basis
    // elements and modulo the relations. Returns the first failure, or "".
    std::string violation() const {
        const std::size_t n = gens();
        if (mult.size() != n * n || unit.size() != n) return "structure constants have the wrong shape";
        try {
            module.validate();
        } catch (const StructuralError& e) {
            return e.what();
        }
        const Presentation& p = module.group;
        const GroupMap t = module.map();
        for (std::size_t i = 0; i < n; ++i) {
            if (!p.equal(product(unit, basis(i)), basis(i))) return "unit law fails on g" + std::to_string(i);
            for (std::size_t j = 0; j < n; ++j) {
                IntVector ij = product(basis(i), basis(j));
                if (!p.equal(ij, product(basis(j), basis(i)))) return "not commutative";
                if (!p.equal(t.apply(ij), product(t.apply(basis(i)), t.apply(basis(j)))))
                    return "T is not multiplicative";
                for (std::size_t k = 0; k < n; ++k)
                    if (!p.equal(product(ij, basis(k)), product(basis(i), product(basis(j), basis(k)))))
                        return "not associative";
            }
            // Relations times anything stay relations.
            for (std::size_t r = 0; r < p.rels.rows(); ++r)
                if (!p.is_zero(product(p.rels.row(r), basis(i)))) return "multiplication does not respect relations";
        }
        return {};
    }
};

inline InvolutiveRing tensor_rings(const InvolutiveRing& a, const InvolutiveRing& b) {
    InvolutiveRing r;
    r.module = tensor_involutive(a.module, b.module);
    const std::size_t na = a.gens(), nb = b.gens(), n = na * nb;
    r.mult.assign(n * n, IntVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const IntVector& x = a.mult[(i / nb) * na + j / nb];
            const IntVector& y = b.mult[(i % nb) * nb + j % nb];
            IntVector& out = r.mult[i * n + j];
            for (std::size_t p = 0; p < na; ++p)
                if (x[p] != 0)
                    for (std::size_t q = 0; q < nb; ++q) out[p * nb + q] += x[p] * y[q];
        }
    r.unit.assign(n, 0);
    for (std::size_t p = 0; p < na; ++p)
        for (std::size_t q = 0; q < nb; ++q) r.unit[p * nb + q] = a.unit[p] * b.unit[q];
    return r;
}

struct KunnethReport {
    FinAbGroup plus_direct, plus_predicted;    // h+(a⊗b) and h+a⊗h+b + h-a⊗h-b
    FinAbGroup minus_direct, minus_predicted;  // h-(a⊗b) and h+a⊗h-b + h-a⊗h+b
    bool holds() const { return plus_direct == plus_predicted && minus_direct == minus_predicted; }
};

// Compares Tate groups of a tensor product with the Künneth prediction. The
// prediction needs the first factor free as a group.
inline KunnethReport kunneth_check(const InvolutiveModule& a, const InvolutiveModule& b) {
    if (!a.group.group().is_free() || a.group.rels.rows() != 0)
        throw StructuralError("Künneth for Tate groups needs the first factor free");
    FinAbGroup pa = h_plus(a), ma = h_minus(a), pb = h_plus(b), mb = h_minus(b);
    InvolutiveModule ab = tensor_involutive(a, b);
    KunnethReport r;
    r.plus_direct = h_plus(ab);
    r.minus_direct = h_minus(ab);
    r.plus_predicted = direct_sum(tensor(pa, pb), tensor(ma, mb));
    r.minus_predicted = direct_sum(tensor(pa, mb), tensor(ma, pb));
    return r;
}

inline KunnethReport kunneth_check(const InvolutiveRing& a, const InvolutiveRing& b) {
    return kunneth_check(a.module, b.module);
}

// Multiplicities of the indecomposable Z[Z_2]-lattices: trivial Z, sign Z,
// and the swap Z^2.
struct BousfieldCounts {
    std::size_t trivial = 0, sign = 0, swap = 0;
    friend bool operator==(const BousfieldCounts&, const BousfieldCounts&) = default;
};

namespace detail {

inline std::size_t f2_dimension(const FinAbGroup& g) {
    if (!g.killed_by(2)) throw StructuralError("Tate group not killed by 2");
    return g.torsion.size();
}

}  // namespace detail

// For a free module h+ = Z_2^{n+} and h- = Z_2^{n-}, and the swaps fill up
// the rank. Consistency with both eigenlattice ranks and the trace is checked.
inline BousfieldCounts bousfield_decompose(const InvolutiveModule& m) {
    if (m.group.rels.rows() != 0) throw StructuralError("Bousfield decomposition needs a free module");
    m.validate();
    const std::size_t n = m.gens();
    BousfieldCounts c;
    c.trivial = detail::f2_dimension(h_plus(m));
    c.sign = detail::f2_dimension(h_minus(m));
    if ((n - c.trivial - c.sign) % 2 != 0) throw StructuralError("inconsistent Tate dimensions");
    c.swap = (n - c.trivial - c.sign) / 2;

    IntMatrix id = IntMatrix::identity(n);
    std::size_t plus_rank = n - smith_normal_form(id - m.T, {false, false, false}).rank;
    std::size_t minus_rank = n - smith_normal_form(id + m.T, {false, false, false}).rank;
    Integer trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += m.T(i, i);
    if (plus_rank != c.trivial + c.swap || minus_rank != c.sign + c.swap ||
        trace != Integer(c.trivial) - Integer(c.sign))
        throw StructuralError("Bousfield counts disagree with eigenlattice ranks or trace");
    return c;
}

// The free module trivial^a + sign^b + swap^c, in that basis order.
inline InvolutiveModule bousfield_module(const BousfieldCounts& c) {
    const std::size_t n = c.trivial + c.sign + 2 * c.swap;
    IntMatrix t(n, n);
    std::size_t i = 0;
    for (std::size_t k = 0; k < c.trivial; ++k, ++i) t(i, i) = 1;
    for (std::size_t k = 0; k < c.sign; ++k, ++i) t(i, i) = -1;
    for (std::size_t k = 0; k < c.swap; ++k, i += 2) t(i, i + 1) = t(i + 1, i) = 1;
    return InvolutiveModule::free(t);
}

// Conjugation on the generator monomials of total degree <= `degree` (degree
// counts |exponent| on Laurent generators). Conjugation permutes the ring
// generators, so it permutes these monomials; the permutation is checked
// against conjugation of the characters themselves.
inline InvolutiveModule representation_ring_model(const GroupData& g, int degree) {
    const std::size_t n = g.generators.size();
    std::vector<std::size_t> partner(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& gen = g.generators[i];
        Character bar = conjugate(gen.character);
        if (gen.invertible || bar == gen.character) {
            partner[i] = i;
            continue;
        }
        std::size_t j = 0;
        while (j < n && !(g.generators[j].character == bar)) ++j;
        if (j == n) throw StructuralError("conjugate of " + gen.name + " is not a generator");
        partner[i] = j;
    }
    std::vector<GeneratorMonomial> monos;
    GeneratorMonomial m(n, 0);
    std::function<void(std::size_t, int)> walk = [&](std::size_t i, int left) {
        if (i == n) {
            monos.push_back(m);
            return;
        }
        const int lo = g.generators[i].invertible ? -left : 0;
        for (int d = lo; d <= left; ++d) {
            m[i] = d;
            walk(i + 1, left - (d < 0 ? -d : d));
        }
        m[i] = 0;
    };
    walk(0, degree);
    std::map<GeneratorMonomial, std::size_t> index;
    for (std::size_t k = 0; k < monos.size(); ++k) index[monos[k]] = k;

    IntMatrix t(monos.size(), monos.size());
    for (std::size_t k = 0; k < monos.size(); ++k) {
        GeneratorMonomial image(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            image[partner[i]] += g.generators[i].invertible ? -monos[k][i] : monos[k][i];
        if (!(conjugate(evaluate(g, monos[k])) == evaluate(g, image)))
            throw StructuralError("conjugation table of " + g.name + " disagrees with the characters");
        t(k, index.at(image)) = 1;
    }
    return InvolutiveModule::free(t);
}

}  // namespace kring
