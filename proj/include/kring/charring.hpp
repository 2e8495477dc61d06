#pragma once

// Representation rings as rings of Laurent-polynomial characters on a
// maximal torus.

#include "kring/exactlin.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace kring {

using Exponent = std::vector<int>;

// Z-linear combination of Laurent monomials in `rank` torus variables.
// Zero coefficients are never stored.
class Character {
public:
    Character() = default;
    explicit Character(std::size_t rank) : rank_(rank) {}

    static Character constant(std::size_t rank, const Integer& c) {
        Character x(rank);
        x.add_term(Exponent(rank, 0), c);
        return x;
    }
    static Character monomial(const Exponent& e, const Integer& c = 1) {
        Character x(e.size());
        x.add_term(e, c);
        return x;
    }
    static Character variable(std::size_t rank, std::size_t i, int power = 1) {
        Exponent e(rank, 0);
        e.at(i) = power;
        return monomial(e);
    }

    std::size_t rank() const { return rank_; }
    const std::map<Exponent, Integer>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    Integer coeff(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Integer(0) : it->second;
    }
    // Value at the identity of the torus: the dimension of a representation.
    Integer dimension() const {
        Integer s = 0;
        for (const auto& [e, c] : terms_) s += c;
        return s;
    }
    bool is_effective() const {
        for (const auto& [e, c] : terms_)
            if (c < 0) return false;
        return true;
    }

    void add_term(const Exponent& e, const Integer& c) {
        if (e.size() != rank_) throw StructuralError("monomial length does not match torus rank");
        if (c == 0) return;
        auto [it, fresh] = terms_.emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Character& operator+=(const Character& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Character& operator-=(const Character& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend Character operator+(Character a, const Character& b) { return a += b; }
    friend Character operator-(Character a, const Character& b) { return a -= b; }
    friend Character operator-(const Character& a) { return Integer(-1) * a; }
    friend Character operator*(const Integer& k, const Character& a) {
        Character out(a.rank_);
        if (k == 0) return out;
        for (const auto& [e, c] : a.terms_) out.terms_.emplace(e, k * c);
        return out;
    }
    friend Character operator*(const Character& a, const Character& b) {
        a.check(b);
        Character out(a.rank_);
        Exponent e(a.rank_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                out.add_term(e, ca * cb);
            }
        return out;
    }
    Character pow(unsigned k) const {
        Character r = constant(rank_, 1);
        for (unsigned i = 0; i < k; ++i) r = r * *this;
        return r;
    }
    friend bool operator==(const Character& a, const Character& b) {
        return a.rank_ == b.rank_ && a.terms_ == b.terms_;
    }

    std::string str(const std::vector<std::string>& names = {}) const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        // Highest monomials first reads like the usual polynomial notation.
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            std::string mono;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += i < names.size() ? names[i] : "x" + std::to_string(i + 1);
                if (e[i] != 1) mono += "^" + std::to_string(e[i]);
            }
            Integer a = abs_value(c);
            std::string body = mono.empty() ? a.str() : (a == 1 ? mono : a.str() + "*" + mono);
            if (first) out += c < 0 ? "-" + body : body;
            else out += (c < 0 ? " - " : " + ") + body;
            first = false;
        }
        return out;
    }

private:
    void check(const Character& o) const {
        if (o.rank_ != rank_) throw StructuralError("characters on tori of different rank");
    }

    std::size_t rank_ = 0;
    std::map<Exponent, Integer> terms_;
};

struct CharacterRingSpec {
    std::size_t rank = 0;
    std::vector<std::string> names;
    // Variable i stands for z_i with x_i = z_i^2, so half-integral weights
    // stay integral.
    std::vector<bool> weight_doubling;

    static CharacterRingSpec plain(std::vector<std::string> names) {
        CharacterRingSpec s;
        s.rank = names.size();
        s.weight_doubling.assign(s.rank, false);
        s.names = std::move(names);
        return s;
    }
};

// Inverts every torus variable: the character of the dual representation.
inline Character conjugate(const Character& c) {
    Character out(c.rank());
    for (const auto& [e, k] : c.terms()) {
        Exponent f = e;
        for (auto& x : f) x = -x;
        out.add_term(f, k);
    }
    return out;
}

// λ_t(c) = Σ λ^k(c) t^k up to t^order, for an honest representation.
inline std::vector<Character> lambda_series_effective(const Character& c, unsigned order) {
    if (!c.is_effective()) throw StructuralError("exterior power of a virtual character");
    std::vector<Character> s(order + 1, Character(c.rank()));
    s[0] = Character::constant(c.rank(), 1);
    for (const auto& [e, k] : c.terms()) {
        Character m = Character::monomial(e);
        for (Integer rep = 0; rep < k; ++rep)
            for (unsigned j = order; j >= 1; --j) s[j] += m * s[j - 1];
    }
    return s;
}

// Elementary symmetric function e_k of the weight multiset.
inline Character exterior_power(const Character& c, unsigned k) { return lambda_series_effective(c, k)[k]; }

// λ_t(a - b) = λ_t(a) / λ_t(b) truncated at t^order, for any virtual
// character a - b (a, b the positive and negative parts).
inline std::vector<Character> lambda_series(const Character& c, unsigned order) {
    Character pos(c.rank()), neg(c.rank());
    for (const auto& [e, k] : c.terms()) (k > 0 ? pos : neg).add_term(e, abs_value(k));
    auto num = lambda_series_effective(pos, order);
    auto den = lambda_series_effective(neg, order);
    // inv = 1/λ_t(neg): inv_0 = 1, inv_j = -Σ_{i=1..j} den_i inv_{j-i}
    std::vector<Character> inv(order + 1, Character(c.rank()));
    inv[0] = Character::constant(c.rank(), 1);
    for (unsigned j = 1; j <= order; ++j)
        for (unsigned i = 1; i <= j; ++i) inv[j] -= den[i] * inv[j - i];
    std::vector<Character> out(order + 1, Character(c.rank()));
    for (unsigned j = 0; j <= order; ++j)
        for (unsigned i = 0; i <= j; ++i) out[j] += num[i] * inv[j - i];
    return out;
}

// A ring homomorphism between character rings given on torus variables.
struct Restriction {
    CharacterRingSpec source, target;
    std::vector<Character> images;  // one per source variable, on the target torus

    void validate() const {
        if (images.size() != source.rank) throw StructuralError("restriction needs one image per source variable");
        for (std::size_t i = 0; i < images.size(); ++i) {
            if (images[i].rank() != target.rank) throw StructuralError("restriction image on the wrong torus");
            if (images[i].is_zero()) throw StructuralError("restriction image is zero");
            // An integral weight must land on integral weights.
            bool integral = i >= source.weight_doubling.size() || !source.weight_doubling[i];
            if (!integral) continue;
            for (const auto& [e, c] : images[i].terms())
                for (std::size_t j = 0; j < e.size(); ++j)
                    if (j < target.weight_doubling.size() && target.weight_doubling[j] && e[j] % 2 != 0)
                        throw StructuralError("restriction sends an integral weight to a half-integral one");
        }
    }
};

inline Character restrict(const Character& c, const Restriction& r) {
    if (c.rank() != r.source.rank) throw StructuralError("character is not on the restriction's source torus");
    r.validate();
    Character out(r.target.rank);
    for (const auto& [e, k] : c.terms()) {
        Character term = Character::constant(r.target.rank, k);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (e[i] > 0) {
                term = term * r.images[i].pow(static_cast<unsigned>(e[i]));
            } else {
                if (!r.images[i].is_monomial() || abs_value(r.images[i].terms().begin()->second) != 1)
                    throw StructuralError("negative exponent on a variable whose image is not a unit monomial");
                term = term * conjugate(r.images[i]).pow(static_cast<unsigned>(-e[i]));
            }
        }
        out += term;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Groups

enum class RepType { real, complex, quaternionic };

inline std::string to_string(RepType t) {
    switch (t) {
        case RepType::real: return "real";
        case RepType::complex: return "complex";
        case RepType::quaternionic: return "quaternionic";
    }
    return "?";
}

struct RingGenerator {
    std::string name;
    Character character;
    RepType type = RepType::real;
    bool invertible = false;  // a Laurent generator, like x for the circle
};

struct GroupData {
    std::string name;
    CharacterRingSpec spec;
    std::vector<RingGenerator> generators;

    const RingGenerator& generator(const std::string& n) const {
        for (const auto& g : generators)
            if (g.name == n) return g;
        throw StructuralError("no generator named " + n + " in " + name);
    }

    struct TypeCounts {
        int complex = 0, real = 0, quaternionic = 0;
    };
    // Basic representations by type, the (b_C, b_R, b_H) of a full flag.
    TypeCounts type_counts() const {
        TypeCounts t;
        for (const auto& g : generators) {
            if (g.type == RepType::complex) ++t.complex;
            else if (g.type == RepType::real) ++t.real;
            else ++t.quaternionic;
        }
        return t;
    }
};

// Real and quaternionic generators are self-conjugate; a complex generator's
// conjugate is another generator or, for a Laurent generator, its inverse.
// Returns the name of the first offender, empty if none.
inline std::string type_table_violation(const GroupData& g) {
    for (const auto& gen : g.generators) {
        Character bar = conjugate(gen.character);
        if (gen.type != RepType::complex) {
            if (!(bar == gen.character)) return gen.name;
            continue;
        }
        if (bar == gen.character) return gen.name;
        bool paired = gen.invertible && gen.character.is_monomial();
        for (const auto& other : g.generators)
            if (&other != &gen && other.type == RepType::complex && other.character == bar) paired = true;
        if (!paired) return gen.name;
    }
    return {};
}

namespace detail {

inline Character sum_of_pairs(std::size_t rank, int scale) {
    Character c(rank);
    for (std::size_t i = 0; i < rank; ++i) {
        c += Character::variable(rank, i, scale);
        c += Character::variable(rank, i, -scale);
    }
    return c;
}

// Σ over sign vectors with an even (or odd) number of minus signs of Π z_i^{±1}.
inline Character half_spin(std::size_t n, bool even_minus) {
    Character c(n);
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        if ((__builtin_popcountll(mask) % 2 == 0) != even_minus) continue;
        Exponent e(n);
        for (std::size_t i = 0; i < n; ++i) e[i] = (mask >> i & 1) ? -1 : 1;
        c.add_term(e, 1);
    }
    return c;
}

inline std::string lambda_name(unsigned k, const std::string& of) {
    return k == 1 ? of : "lambda^" + std::to_string(k) + " " + of;
}

}  // namespace detail

// SU(n): torus z_1..z_{n-1}, with z_n = (z_1...z_{n-1})^{-1}.
inline GroupData su(unsigned n) {
    if (n < 2) throw StructuralError("SU(n) needs n >= 2");
    GroupData g;
    g.name = "SU(" + std::to_string(n) + ")";
    std::vector<std::string> names;
    for (unsigned i = 1; i < n; ++i) names.push_back("z" + std::to_string(i));
    g.spec = CharacterRingSpec::plain(names);
    const std::size_t r = n - 1;
    Character v(r);
    for (std::size_t i = 0; i < r; ++i) v += Character::variable(r, i);
    v += Character::monomial(Exponent(r, -1));
    auto lam = lambda_series_effective(v, n - 1);
    for (unsigned k = 1; k < n; ++k) {
        RepType t = RepType::complex;
        if (2 * k == n) t = (n % 4 == 0) ? RepType::real : RepType::quaternionic;
        g.generators.push_back({detail::lambda_name(k, "v"), lam[k], t, false});
    }
    return g;
}

// Sp(n): torus t_1..t_n; c'u = Σ (t_i + t_i^{-1}) is the standard 2n-dim rep.
inline GroupData sp(unsigned n) {
    if (n < 1) throw StructuralError("Sp(n) needs n >= 1");
    GroupData g;
    g.name = "Sp(" + std::to_string(n) + ")";
    std::vector<std::string> names;
    for (unsigned i = 1; i <= n; ++i) names.push_back("t" + std::to_string(i));
    g.spec = CharacterRingSpec::plain(names);
    auto lam = lambda_series_effective(detail::sum_of_pairs(n, 1), n);
    for (unsigned k = 1; k <= n; ++k)
        g.generators.push_back({detail::lambda_name(k, "c'u"), lam[k],
                                k % 2 ? RepType::quaternionic : RepType::real, false});
    return g;
}

// Spin(2n+1) on doubled variables z_i (x_i = z_i^2).
inline GroupData spin_odd(unsigned n) {
    if (n < 1) throw StructuralError("Spin(2n+1) needs n >= 1");
    GroupData g;
    g.name = "Spin(" + std::to_string(2 * n + 1) + ")";
    std::vector<std::string> names;
    for (unsigned i = 1; i <= n; ++i) names.push_back("z" + std::to_string(i));
    g.spec = CharacterRingSpec::plain(names);
    g.spec.weight_doubling.assign(n, true);
    Character v = Character::constant(n, 1) + detail::sum_of_pairs(n, 2);
    auto lam = lambda_series_effective(v, n);
    for (unsigned k = 1; k < n; ++k) g.generators.push_back({detail::lambda_name(k, "v"), lam[k], RepType::real, false});
    Character delta = Character::constant(n, 1);
    for (std::size_t i = 0; i < n; ++i)
        delta = delta * (Character::variable(n, i) + Character::variable(n, i, -1));
    RepType dt = (n % 4 == 0 || n % 4 == 3) ? RepType::real : RepType::quaternionic;
    g.generators.push_back({"Delta", delta, dt, false});
    return g;
}

// Spin(2n) on doubled variables, n >= 2.
inline GroupData spin_even(unsigned n) {
    if (n < 2) throw StructuralError("Spin(2n) needs n >= 2");
    GroupData g;
    g.name = "Spin(" + std::to_string(2 * n) + ")";
    std::vector<std::string> names;
    for (unsigned i = 1; i <= n; ++i) names.push_back("z" + std::to_string(i));
    g.spec = CharacterRingSpec::plain(names);
    g.spec.weight_doubling.assign(n, true);
    auto lam = lambda_series_effective(detail::sum_of_pairs(n, 2), n);
    for (unsigned k = 1; k + 2 <= n; ++k) g.generators.push_back({detail::lambda_name(k, "v"), lam[k], RepType::real, false});
    RepType dt = n % 2 ? RepType::complex : (n % 4 == 0 ? RepType::real : RepType::quaternionic);
    g.generators.push_back({"Delta+", detail::half_spin(n, true), dt, false});
    g.generators.push_back({"Delta-", detail::half_spin(n, false), dt, false});
    return g;
}

inline GroupData g2() {
    GroupData g;
    g.name = "G2";
    g.spec = CharacterRingSpec::plain({"x", "y"});
    Character seven = Character::constant(2, 1);
    for (Exponent e : {Exponent{1, 0}, Exponent{-1, 0}, Exponent{0, 1}, Exponent{0, -1}, Exponent{1, 1}, Exponent{-1, -1}})
        seven.add_term(e, 1);
    g.generators.push_back({"7", seven, RepType::real, false});
    g.generators.push_back({"14", exterior_power(seven, 2) - seven, RepType::real, false});
    return g;
}

inline GroupData circle(const std::string& var = "x") {
    GroupData g;
    g.name = "S1";
    g.spec = CharacterRingSpec::plain({var});
    g.generators.push_back({var, Character::variable(1, 0), RepType::complex, true});
    return g;
}

namespace detail {

inline Character embed(const Character& c, std::size_t offset, std::size_t rank) {
    Character out(rank);
    for (const auto& [e, k] : c.terms()) {
        Exponent f(rank, 0);
        for (std::size_t i = 0; i < e.size(); ++i) f[offset + i] = e[i];
        out.add_term(f, k);
    }
    return out;
}

}  // namespace detail

// Product group on the concatenated torus.
inline GroupData product(const GroupData& a, const GroupData& b) {
    GroupData g;
    g.name = a.name + " x " + b.name;
    const std::size_t r = a.spec.rank + b.spec.rank;
    g.spec.rank = r;
    g.spec.names = a.spec.names;
    g.spec.names.insert(g.spec.names.end(), b.spec.names.begin(), b.spec.names.end());
    g.spec.weight_doubling = a.spec.weight_doubling;
    g.spec.weight_doubling.insert(g.spec.weight_doubling.end(), b.spec.weight_doubling.begin(), b.spec.weight_doubling.end());
    for (auto gen : a.generators) {
        gen.character = detail::embed(gen.character, 0, r);
        g.generators.push_back(gen);
    }
    for (auto gen : b.generators) {
        gen.character = detail::embed(gen.character, a.spec.rank, r);
        g.generators.push_back(gen);
    }
    return g;
}

// ---------------------------------------------------------------------------
// Fixed subrings under a central Z_2

// A monomial in the ring generators, one exponent per generator (negative
// only on invertible generators).
using GeneratorMonomial = std::vector<int>;

struct FixedSubring {
    std::vector<std::size_t> odd;  // generators the central element negates
    std::vector<GeneratorMonomial> generators;
    std::vector<std::string> names;
    bool complete = false;

    bool is_fixed(const GeneratorMonomial& m) const {
        int s = 0;
        for (auto i : odd) s += m.at(i);
        return s % 2 == 0;
    }
};

namespace detail {

inline std::string monomial_name(const GroupData& g, const GeneratorMonomial& m) {
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        std::string base = g.generators[i].name;
        if (base.find(' ') != std::string::npos) base = "(" + base + ")";
        if (!out.empty()) out += "*";
        out += base;
        if (m[i] != 1) out += "^" + std::to_string(m[i]);
    }
    return out.empty() ? "1" : out;
}

}  // namespace detail

// Generators of the subring of Z[gens, invertible gens^{-1}] fixed by the
// central element acting by `action` (one sign per generator).
//
// Fixed monomials in one sign orthant of the Laurent exponents form an affine
// semigroup; its irreducible elements, taken over all orthants, generate. For
// a ±1 action every irreducible has total degree <= 2, so the search is
// complete exactly when degree_bound >= 2.
inline FixedSubring central_fixed_subring(const GroupData& g, const std::vector<int>& action, int degree_bound) {
    const std::size_t n = g.generators.size();
    if (action.size() != n) throw StructuralError("action needs one sign per generator");
    FixedSubring out;
    for (std::size_t i = 0; i < n; ++i) {
        if (action[i] != 1 && action[i] != -1) throw StructuralError("central Z_2 acts by signs");
        if (action[i] == -1) out.odd.push_back(i);
    }
    std::vector<std::size_t> laurent;
    for (std::size_t i = 0; i < n; ++i)
        if (g.generators[i].invertible) laurent.push_back(i);

    std::set<GeneratorMonomial> found;
    for (std::size_t orthant = 0; orthant < (std::size_t(1) << laurent.size()); ++orthant) {
        // Enumerate nonnegative "magnitudes" with total degree <= bound,
        // then apply the orthant's signs.
        std::vector<GeneratorMonomial> fixed;
        GeneratorMonomial m(n, 0);
        std::function<void(std::size_t, int)> walk = [&](std::size_t i, int left) {
            if (i == n) {
                GeneratorMonomial s = m;
                for (std::size_t k = 0; k < laurent.size(); ++k)
                    if (orthant >> k & 1) s[laurent[k]] = -s[laurent[k]];
                bool nonzero = std::any_of(s.begin(), s.end(), [](int x) { return x != 0; });
                if (nonzero && out.is_fixed(s)) fixed.push_back(s);
                return;
            }
            for (int d = 0; d <= left; ++d) {
                m[i] = d;
                walk(i + 1, left - d);
            }
            m[i] = 0;
        };
        walk(0, degree_bound);
        std::set<GeneratorMonomial> pool(fixed.begin(), fixed.end());
        for (const auto& s : fixed) {
            bool reducible = false;
            for (const auto& a : fixed) {
                if (a == s) continue;
                GeneratorMonomial b(n);
                bool ok = true;
                for (std::size_t i = 0; i < n && ok; ++i) {
                    b[i] = s[i] - a[i];
                    // b must lie in the same orthant as s
                    if ((s[i] >= 0 && b[i] < 0) || (s[i] <= 0 && b[i] > 0)) ok = false;
                }
                if (ok && pool.count(b)) {
                    reducible = true;
                    break;
                }
            }
            if (!reducible) found.insert(s);
        }
    }
    out.generators.assign(found.begin(), found.end());
    for (const auto& m : out.generators) out.names.push_back(detail::monomial_name(g, m));
    out.complete = degree_bound >= 2;
    return out;
}

// Character of a generator monomial on the torus.
inline Character evaluate(const GroupData& g, const GeneratorMonomial& m) {
    Character c = Character::constant(g.spec.rank, 1);
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] >= 0) {
            c = c * g.generators[i].character.pow(static_cast<unsigned>(m[i]));
        } else {
            if (!g.generators[i].invertible) throw StructuralError("negative power of a non-invertible generator");
            c = c * conjugate(g.generators[i].character).pow(static_cast<unsigned>(-m[i]));
        }
    }
    return c;
}

// ---------------------------------------------------------------------------
// Free coordinates and decomposition

// Coordinates presenting a fixed subring as a free ring Z[p_1..][l_1^{±1}..].
// With an odd Laurent generator L: odd polynomial generators g become g*L,
// L^2 is a Laurent coordinate, other odd Laurent M become M*L^{-1}, and even
// generators are kept. Every fixed monomial then has exactly one expression.
struct FreeCoordinates {
    std::vector<std::string> names;
    std::vector<GeneratorMonomial> monomials;
    std::vector<bool> invertible;
    // Exponents in these coordinates of a fixed generator monomial.
    std::vector<int> rewrite(const GeneratorMonomial& m) const {
        std::vector<int> out(names.size(), 0);
        int l_power = square_ ? m.at(pivot_) : 0;
        for (std::size_t k = 0; k < names.size(); ++k) {
            if (role_[k] == Role::square) continue;
            out[k] = m.at(source_[k]);
            if (role_[k] == Role::odd_poly) l_power -= out[k];
            if (role_[k] == Role::odd_laurent) l_power += out[k];
        }
        if (l_power % 2 != 0) throw StructuralError("monomial is not fixed by the central element");
        if (square_) out[*square_] = l_power / 2;
        return out;
    }

    enum class Role { kept, odd_poly, odd_laurent, square };
    std::vector<Role> role_;
    std::vector<std::size_t> source_;
    std::size_t pivot_ = 0;
    std::optional<std::size_t> square_;  // slot of L^2, absent without odd generators
};

inline FreeCoordinates free_coordinates(const GroupData& g, const FixedSubring& f) {
    const std::size_t n = g.generators.size();
    std::vector<bool> odd(n, false);
    for (auto i : f.odd) odd[i] = true;
    std::optional<std::size_t> pivot;
    for (std::size_t i = 0; i < n && !pivot; ++i)
        if (odd[i] && g.generators[i].invertible) pivot = i;
    FreeCoordinates fc;
    if (!pivot && !f.odd.empty())
        throw StructuralError("fixed subring has no odd Laurent generator; it is not free on monomials");
    if (pivot) fc.pivot_ = *pivot;
    for (std::size_t i = 0; i < n; ++i) {
        GeneratorMonomial m(n, 0);
        FreeCoordinates::Role role;
        bool inv = g.generators[i].invertible;
        if (pivot && i == *pivot) {
            m[i] = 2;
            role = FreeCoordinates::Role::square;
            fc.square_ = fc.names.size();
        } else if (!odd[i]) {
            m[i] = 1;
            role = FreeCoordinates::Role::kept;
        } else if (!inv) {
            m[i] = 1;
            m[*pivot] = 1;
            role = FreeCoordinates::Role::odd_poly;
        } else {
            m[i] = 1;
            m[*pivot] = -1;
            role = FreeCoordinates::Role::odd_laurent;
        }
        fc.names.push_back(detail::monomial_name(g, m));
        fc.monomials.push_back(m);
        fc.invertible.push_back(inv);
        fc.role_.push_back(role);
        fc.source_.push_back(i);
    }
    return fc;
}

// Writes a character of g as a polynomial in its ring generators (Laurent in
// the invertible ones) by leading-term reduction: terms are grouped by their
// Laurent exponents, and within a group the lex-largest semisimple exponent
// is matched against the generators' leading exponents.
inline std::map<GeneratorMonomial, Integer> decompose(const GroupData& g, const Character& c) {
    const std::size_t n = g.generators.size(), rank = g.spec.rank;
    if (c.rank() != rank) throw StructuralError("character is not on the group's torus");
    std::vector<bool> laurent_var(rank, false);
    std::vector<std::size_t> laurent_gen_of_var(rank, n), poly_gens;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& gen = g.generators[i];
        if (!gen.invertible) {
            poly_gens.push_back(i);
            continue;
        }
        const auto& [e, k] = *gen.character.terms().begin();
        std::size_t nz = std::count_if(e.begin(), e.end(), [](int x) { return x != 0; });
        if (!gen.character.is_monomial() || k != 1 || nz != 1)
            throw StructuralError("Laurent generator must be a single torus variable");
        std::size_t v = std::find_if(e.begin(), e.end(), [](int x) { return x != 0; }) - e.begin();
        if (e[v] != 1) throw StructuralError("Laurent generator must be a single torus variable");
        laurent_var[v] = true;
        laurent_gen_of_var[v] = i;
    }
    std::vector<std::size_t> semis;
    for (std::size_t v = 0; v < rank; ++v)
        if (!laurent_var[v]) semis.push_back(v);

    auto project = [&](const Exponent& e) {
        Exponent s;
        for (auto v : semis) s.push_back(e[v]);
        return s;
    };
    IntMatrix leads(0, semis.size());
    for (auto i : poly_gens) {
        const Character& ch = g.generators[i].character;
        Exponent best;
        bool first = true;
        for (const auto& [e, k] : ch.terms()) {
            for (std::size_t v = 0; v < rank; ++v)
                if (laurent_var[v] && e[v] != 0)
                    throw StructuralError("polynomial generator involves a Laurent variable");
            Exponent s = project(e);
            if (first || s > best) best = s, first = false;
        }
        IntVector row;
        for (int x : best) row.push_back(x);
        leads.append_row(row);
    }

    std::map<GeneratorMonomial, Integer> out;
    Character rest = c;
    for (int guard = 0; !rest.is_zero(); ++guard) {
        if (guard > 200000) throw StructuralError("decomposition did not terminate; character not invariant?");
        // Lex-largest term within the Laurent group of the overall first term.
        Exponent key;
        for (std::size_t v = 0; v < rank; ++v)
            if (laurent_var[v]) key.push_back(rest.terms().begin()->first[v]);
        const Exponent* lead = nullptr;
        Exponent lead_s;
        Integer coeff;
        for (const auto& [e, k] : rest.terms()) {
            Exponent lk;
            for (std::size_t v = 0; v < rank; ++v)
                if (laurent_var[v]) lk.push_back(e[v]);
            if (lk != key) continue;
            Exponent s = project(e);
            if (!lead || s > lead_s) lead = &e, lead_s = s, coeff = k;
        }
        IntVector target;
        for (int x : lead_s) target.push_back(x);
        std::optional<IntVector> sol = poly_gens.empty()
                                           ? (std::all_of(target.begin(), target.end(), [](const Integer& x) { return x == 0; })
                                                  ? std::optional<IntVector>(IntVector{})
                                                  : std::nullopt)
                                           : solve_left(leads, target);
        if (!sol) throw StructuralError("leading weight is not a combination of generator weights");
        GeneratorMonomial m(n, 0);
        for (std::size_t k = 0; k < poly_gens.size(); ++k) {
            if ((*sol)[k] < 0) throw StructuralError("leading weight is not dominant; character not invariant?");
            m[poly_gens[k]] = static_cast<int>((*sol)[k]);
        }
        for (std::size_t v = 0; v < rank; ++v)
            if (laurent_var[v]) m[laurent_gen_of_var[v]] = (*lead)[v];
        Integer k = coeff;
        rest -= k * evaluate(g, m);
        out[m] += k;
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

// A character of g, fixed by the central element, as a Laurent polynomial in
// free coordinates.
inline Character in_coordinates(const GroupData& g, const FreeCoordinates& fc, const Character& c) {
    Character out(fc.names.size());
    for (const auto& [m, k] : decompose(g, c)) {
        std::vector<int> e = fc.rewrite(m);
        out.add_term(Exponent(e.begin(), e.end()), k);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Homogeneous pairs

// G ⊃ H with the torus restriction, and (when H has a central Z_2 quotient)
// the sign by which that Z_2 acts on each ring generator of H.
struct HomogeneousPair {
    std::string name;
    GroupData g, h;
    Restriction restriction;
    std::vector<int> central_action;  // empty: R(H) is used as is
};

// Restriction of every ring generator of G to H.
inline std::vector<Character> restricted_generators(const HomogeneousPair& p) {
    std::vector<Character> out;
    for (const auto& gen : p.g.generators) out.push_back(restrict(gen.character, p.restriction));
    return out;
}

// SU(2) ⊃ T, so G/H = S^2.
inline HomogeneousPair su2_over_torus() {
    HomogeneousPair p;
    p.name = "SU(2)/T";
    p.g = su(2);
    p.h = circle("x");
    p.restriction = {p.g.spec, p.h.spec, {Character::variable(1, 0)}};
    return p;
}

// SU(5) ⊃ Sp(2) x_{Z2} S^1. On tori: z1 -> t1 x, z2 -> t1^-1 x, z3 -> t2 x,
// z4 -> t2^-1 x, hence z5 -> x^-4. The central -1 negates c'u and x.
inline HomogeneousPair berger_b13() {
    HomogeneousPair p;
    p.name = "B13";
    p.g = su(5);
    p.h = product(sp(2), circle("x"));
    auto m = [](int t1, int t2, int x) { return Character::monomial(Exponent{t1, t2, x}); };
    p.restriction = {p.g.spec, p.h.spec, {m(1, 0, 1), m(-1, 0, 1), m(0, 1, 1), m(0, -1, 1)}};
    p.central_action = {-1, 1, -1};
    return p;
}

}  // namespace kring
