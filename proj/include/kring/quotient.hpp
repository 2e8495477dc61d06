#pragma once

// Additive structure of Z[x_1, ..., y_1^{±1}, ...] / (relations) by windowed
// saturation and Smith normal form. This realizes Z ⊗_{R(G)} R(H) for
// homogeneous pairs.

#include "kring/charring.hpp"
#include "kring/exactlin.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace kring {

// The window did not stabilize: the structures at w and w+1 differ.
struct IncompleteError : std::runtime_error {
    FinAbGroup at_window, at_next;
    IncompleteError(const std::string& m, FinAbGroup a, FinAbGroup b)
        : std::runtime_error(m), at_window(std::move(a)), at_next(std::move(b)) {}
};

// An element has exponents outside the window it is being reduced in.
struct WindowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Variable `variable` is solved from relation `relation`, which must be
// linear in it with a unit-monomial coefficient.
struct Elimination {
    std::string variable;
    std::size_t relation = 0;
};

struct LaurentIdealPresentation {
    std::vector<std::string> names;
    std::vector<bool> invertible;
    std::vector<Character> relations;
    std::vector<Elimination> eliminable;
    // Named elements kept in step with substitutions (e.g. a = d^2 b^-1).
    std::map<std::string, Character> aliases;

    std::size_t rank() const { return names.size(); }
    std::size_t index(const std::string& n) const {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == n) return i;
        throw StructuralError("no variable named " + n);
    }
    Character variable(const std::string& n) const { return Character::variable(rank(), index(n)); }
    Character constant(const Integer& k) const { return Character::constant(rank(), k); }

    void validate() const {
        if (invertible.size() != names.size()) throw StructuralError("one invertibility flag per variable");
        auto check = [&](const Character& c, const std::string& what) {
            if (c.rank() != rank()) throw StructuralError(what + " is not in the presentation's variables");
            for (const auto& [e, k] : c.terms())
                for (std::size_t i = 0; i < e.size(); ++i)
                    if (e[i] < 0 && !invertible[i])
                        throw StructuralError(what + " has a negative power of " + names[i]);
        };
        for (const auto& r : relations) check(r, "relation");
        for (const auto& [n, c] : aliases) check(c, "alias " + n);
    }
};

namespace detail {

// Substitutes variable v := expr and drops v from the variable list.
inline Character substitute(const Character& c, std::size_t v, const Character& expr, bool invertible_expr) {
    const std::size_t r = c.rank();
    Character out(r - 1);
    std::map<int, Character> powers;
    for (const auto& [e, k] : c.terms()) {
        Exponent rest;
        for (std::size_t i = 0; i < r; ++i)
            if (i != v) rest.push_back(e[i]);
        Character term = Character::monomial(rest, k);
        int p = e[v];
        if (p != 0) {
            if (p < 0 && !invertible_expr) throw StructuralError("negative power of an eliminated non-unit");
            auto it = powers.find(p);
            if (it == powers.end())
                it = powers.emplace(p, p > 0 ? expr.pow(static_cast<unsigned>(p))
                                             : conjugate(expr).pow(static_cast<unsigned>(-p)))
                         .first;
            term = term * it->second;
        }
        out += term;
    }
    return out;
}

inline Exponent drop(const Exponent& e, std::size_t v) {
    Exponent out;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (i != v) out.push_back(e[i]);
    return out;
}

}  // namespace detail

// Solves each eliminable variable from its relation and substitutes it
// everywhere. The defining relation becomes zero and is removed; the others
// are rewritten, so the quotient ring is unchanged.
inline LaurentIdealPresentation eliminate_units(const LaurentIdealPresentation& input) {
    input.validate();
    LaurentIdealPresentation p = input;
    p.eliminable.clear();
    std::vector<std::optional<std::size_t>> where(input.relations.size());
    for (std::size_t i = 0; i < where.size(); ++i) where[i] = i;

    for (const auto& step : input.eliminable) {
        auto found = std::find(p.names.begin(), p.names.end(), step.variable);
        if (found == p.names.end())
            throw StructuralError("cyclic or repeated elimination of " + step.variable);
        const std::size_t v = found - p.names.begin();
        if (step.relation >= where.size() || !where[step.relation])
            throw StructuralError("elimination of " + step.variable + " uses a consumed relation");
        const Character& rel = p.relations[*where[step.relation]];

        // rel = m * v + rest with m a unit monomial and rest free of v.
        Character rest(p.rank() - 1);
        std::optional<std::pair<Exponent, Integer>> lead;
        for (const auto& [e, k] : rel.terms()) {
            if (e[v] == 0) {
                rest.add_term(detail::drop(e, v), k);
            } else if (e[v] == 1 && !lead) {
                lead = {detail::drop(e, v), k};
            } else {
                throw StructuralError("relation for " + step.variable + " is not linear in it with a unit coefficient");
            }
        }
        if (!lead || abs_value(lead->second) != 1)
            throw StructuralError("relation for " + step.variable + " is not linear in it with a unit coefficient");
        Exponent inv = lead->first;
        for (std::size_t i = 0, j = 0; i < p.rank(); ++i) {
            if (i == v) continue;
            if (inv[j] != 0 && !p.invertible[i])
                throw StructuralError("coefficient of " + step.variable + " is not a unit");
            inv[j] = -inv[j];
            ++j;
        }
        // v = -(1/m) rest, and 1/m = sign * monomial^{-1}.
        Character expr = Integer(-lead->second) * (Character::monomial(inv) * rest);
        const bool unit_expr = expr.is_monomial() && abs_value(expr.terms().begin()->second) == 1;
        if (p.invertible[v] && !unit_expr)
            throw StructuralError("eliminating the invertible " + step.variable + " needs a unit expression");

        const std::size_t consumed = *where[step.relation];
        std::vector<Character> rels;
        for (std::size_t i = 0; i < p.relations.size(); ++i)
            if (i != consumed) rels.push_back(detail::substitute(p.relations[i], v, expr, unit_expr));
        for (auto& w : where) {
            if (!w) continue;
            if (*w == consumed) w.reset();
            else if (*w > consumed) --*w;
        }
        for (auto& [n, c] : p.aliases) c = detail::substitute(c, v, expr, unit_expr);
        p.aliases[step.variable] = expr;
        p.relations = std::move(rels);
        p.names.erase(p.names.begin() + v);
        p.invertible.erase(p.invertible.begin() + v);
    }
    // Relations that became 0 carry no information.
    std::erase_if(p.relations, [](const Character& c) { return c.is_zero(); });
    return p;
}

// The quotient's additive group with the data to reduce elements.
struct AdditiveStructure {
    FinAbGroup group;
    std::vector<Character> basis_reps;  // one per canonical summand
    int window = 0;
    FinAbGroup next_window_group;  // the certificate: equals `group`

    std::vector<Exponent> monomials;  // column order of the window module
    std::map<Exponent, std::size_t> column;
    std::shared_ptr<const NormalForm> normal_form;
    std::size_t rank = 0;

    // Canonical coordinates: free coordinates, then torsion mod d_i.
    IntVector coordinates(const Character& c) const {
        if (c.rank() != rank) throw StructuralError("element is not in the presentation's variables");
        IntVector x(monomials.size());
        for (const auto& [e, k] : c.terms()) {
            auto it = column.find(e);
            if (it == column.end()) throw WindowError("element leaves the window; enlarge it");
            x[it->second] += k;
        }
        return normal_form->coords(x);
    }
    bool is_zero(const Character& c) const {
        for (const auto& v : coordinates(c))
            if (v != 0) return false;
        return true;
    }
    Character element(const IntVector& coords) const {
        IntVector x = normal_form->element(coords);
        Character c(rank);
        for (std::size_t j = 0; j < x.size(); ++j) c.add_term(monomials[j], x[j]);
        return c;
    }
};

namespace detail {

// Exponent box: [-w, w] for invertible variables, [0, w] otherwise.
inline std::vector<Exponent> window_box(const std::vector<bool>& invertible, int w) {
    std::vector<Exponent> out{Exponent{}};
    for (bool inv : invertible) {
        std::vector<Exponent> next;
        for (const auto& e : out)
            for (int k = inv ? -w : 0; k <= w; ++k) {
                Exponent f = e;
                f.push_back(k);
                next.push_back(std::move(f));
            }
        out = std::move(next);
    }
    return out;
}

struct WindowModule {
    std::vector<Exponent> monomials;
    std::map<Exponent, std::size_t> column;
    IntMatrix rels;
};

// Every monomial multiple of every relation whose support stays in the box.
inline WindowModule window_module(const LaurentIdealPresentation& p, int w) {
    WindowModule m;
    m.monomials = window_box(p.invertible, w);
    for (std::size_t j = 0; j < m.monomials.size(); ++j) m.column[m.monomials[j]] = j;
    m.rels = IntMatrix(0, m.monomials.size());
    const std::size_t r = p.rank();
    for (const auto& rel : p.relations) {
        if (rel.is_zero()) continue;
        // Shifts keeping the relation's exponent range inside the box.
        Exponent lo(r, std::numeric_limits<int>::max()), hi(r, std::numeric_limits<int>::min());
        for (const auto& [e, k] : rel.terms())
            for (std::size_t i = 0; i < r; ++i) lo[i] = std::min(lo[i], e[i]), hi[i] = std::max(hi[i], e[i]);
        std::vector<Exponent> shifts{Exponent{}};
        for (std::size_t i = 0; i < r; ++i) {
            const int box_lo = p.invertible[i] ? -w : 0;
            // Polynomial variables only multiply by nonnegative powers.
            const int from = p.invertible[i] ? box_lo - lo[i] : std::max(0, box_lo - lo[i]);
            const int to = w - hi[i];
            std::vector<Exponent> next;
            for (const auto& s : shifts)
                for (int k = from; k <= to; ++k) {
                    Exponent f = s;
                    f.push_back(k);
                    next.push_back(std::move(f));
                }
            shifts = std::move(next);
        }
        for (const auto& s : shifts) {
            IntVector row(m.monomials.size());
            for (const auto& [e, k] : rel.terms()) {
                Exponent f = e;
                for (std::size_t i = 0; i < r; ++i) f[i] += s[i];
                row[m.column.at(f)] = k;
            }
            m.rels.append_row(row);
        }
    }
    return m;
}

}  // namespace detail

inline constexpr int kDefaultWindow = 12;

// Z-module structure of the quotient, certified by agreement of windows w
// and w+1. Throws IncompleteError when they differ.
inline AdditiveStructure additive_structure(const LaurentIdealPresentation& p, int window = kDefaultWindow) {
    p.validate();
    if (window < 0) throw StructuralError("window must be nonnegative");
    auto here = detail::window_module(p, window);
    auto next = detail::window_module(p, window + 1);
    FinAbGroup g_next = quotient_presentation(next.monomials.size(), next.rels);
    auto nf = std::make_shared<const NormalForm>(Presentation(here.monomials.size(), here.rels));
    if (nf->group() != g_next)
        throw IncompleteError("quotient did not stabilize: " + nf->group().str() + " at window " +
                                  std::to_string(window) + ", " + g_next.str() + " at the next",
                              nf->group(), g_next);
    AdditiveStructure s;
    s.group = nf->group();
    s.next_window_group = g_next;
    s.window = window;
    s.monomials = std::move(here.monomials);
    s.column = std::move(here.column);
    s.normal_form = nf;
    s.rank = p.rank();
    for (std::size_t k = 0; k < nf->size(); ++k) {
        IntVector unit(nf->size());
        unit[k] = 1;
        s.basis_reps.push_back(s.element(unit));
    }
    return s;
}

// Canonical coordinates of an element of the quotient.
inline IntVector element_normal_form(const AdditiveStructure& s, const Character& c) { return s.coordinates(c); }

// The map from the abstract group on `elements` (with the declared orders,
// 0 for infinite) into the quotient, in canonical coordinates. It is an
// isomorphism exactly when the elements form a basis with those orders.
inline GroupMap basis_map(const AdditiveStructure& s, const std::vector<Character>& elements,
                          const std::vector<Integer>& orders) {
    if (elements.size() != orders.size()) throw StructuralError("one order per basis element");
    IntMatrix m(0, s.group.generator_count());
    for (const auto& e : elements) m.append_row(s.coordinates(e));
    return GroupMap(Presentation::cyclic(orders), Presentation::of(s.group), m);
}

inline bool is_basis(const AdditiveStructure& s, const std::vector<Character>& elements,
                     const std::vector<Integer>& orders) {
    GroupMap f = basis_map(s, elements, orders);
    return f.well_formed() && is_injective(f) && is_surjective(f);
}

// Z ⊗_{R(G)} R(H): R(H) (or its central fixed subring, in free coordinates)
// modulo the restrictions of the reduced generators gen - dim(gen) of R(G).
inline LaurentIdealPresentation augmentation_quotient(const HomogeneousPair& pair) {
    pair.restriction.validate();
    if (pair.restriction.source.rank != pair.g.spec.rank || pair.restriction.target.rank != pair.h.spec.rank)
        throw StructuralError("restriction does not go from G's torus to H's");
    LaurentIdealPresentation p;
    auto images = restricted_generators(pair);
    if (pair.central_action.empty()) {
        for (const auto& gen : pair.h.generators) {
            p.names.push_back(gen.name);
            p.invertible.push_back(gen.invertible);
        }
        for (std::size_t k = 0; k < images.size(); ++k) {
            Character rel(p.rank());
            for (const auto& [m, c] : decompose(pair.h, images[k])) rel.add_term(Exponent(m.begin(), m.end()), c);
            rel -= p.constant(pair.g.generators[k].character.dimension());
            p.relations.push_back(rel);
        }
        return p;
    }
    FixedSubring f = central_fixed_subring(pair.h, pair.central_action, 2);
    FreeCoordinates fc = free_coordinates(pair.h, f);
    p.names = fc.names;
    p.invertible = fc.invertible;
    for (std::size_t k = 0; k < images.size(); ++k)
        p.relations.push_back(in_coordinates(pair.h, fc, images[k]) -
                              p.constant(pair.g.generators[k].character.dimension()));
    for (std::size_t i = 0; i < f.generators.size(); ++i) {
        std::vector<int> e = fc.rewrite(f.generators[i]);
        p.aliases[f.names[i]] = Character::monomial(Exponent(e.begin(), e.end()));
    }
    return p;
}

// The B^13 quotient with the linear variables marked for elimination:
// (c'u)x from the first relation, lambda^2 c'u from the second.
inline LaurentIdealPresentation berger_presentation() {
    LaurentIdealPresentation p = augmentation_quotient(berger_b13());
    p.eliminable = {{p.names[0], 0}, {p.names[1], 1}};
    return p;
}

}  // namespace kring
