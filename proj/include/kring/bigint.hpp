#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace kring {

using Integer = boost::multiprecision::mpz_int;

inline Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }

// Floor modulus into [0, m) for m > 0.
inline Integer mod_floor(const Integer& x, const Integer& m) {
    Integer r = x % m;
    if (r < 0) r += m;
    return r;
}

inline Integer gcd(Integer a, Integer b) {
    a = abs_value(a);
    b = abs_value(b);
    while (b != 0) {
        Integer t = a % b;
        a = std::move(b);
        b = std::move(t);
    }
    return a;
}

inline Integer binomial(const Integer& n, unsigned k) {
    // Generalized binomial n(n-1)...(n-k+1)/k!, valid for negative n.
    Integer num = 1, den = 1;
    for (unsigned i = 0; i < k; ++i) {
        num *= (n - i);
        den *= (i + 1);
    }
    return num / den;
}

inline std::string to_string(const Integer& x) { return x.str(); }

struct Overflow : std::overflow_error {
    Overflow() : std::overflow_error("int64 overflow") {}
};

// int64 that throws Overflow instead of wrapping. Used as the fast path of
// Smith normal form; the caller restarts in Integer when it throws.
class Checked64 {
public:
    Checked64() = default;
    Checked64(std::int64_t v) : v_(v) {}

    static bool fits(const Integer& x) {
        return x >= std::numeric_limits<std::int64_t>::min() + 1 &&
               x <= std::numeric_limits<std::int64_t>::max();
    }
    static Checked64 from(const Integer& x) { return Checked64(static_cast<std::int64_t>(x)); }
    Integer to_integer() const { return Integer(v_); }
    std::int64_t raw() const { return v_; }

    friend Checked64 operator+(Checked64 a, Checked64 b) {
        std::int64_t r;
        if (__builtin_add_overflow(a.v_, b.v_, &r)) throw Overflow();
        return r;
    }
    friend Checked64 operator-(Checked64 a, Checked64 b) {
        std::int64_t r;
        if (__builtin_sub_overflow(a.v_, b.v_, &r)) throw Overflow();
        return r;
    }
    friend Checked64 operator*(Checked64 a, Checked64 b) {
        std::int64_t r;
        if (__builtin_mul_overflow(a.v_, b.v_, &r)) throw Overflow();
        return r;
    }
    // Truncating division, like Integer.
    friend Checked64 operator/(Checked64 a, Checked64 b) {
        if (b.v_ == -1 && a.v_ == std::numeric_limits<std::int64_t>::min()) throw Overflow();
        return a.v_ / b.v_;
    }
    friend Checked64 operator%(Checked64 a, Checked64 b) {
        if (b.v_ == -1) return 0;
        return a.v_ % b.v_;
    }
    Checked64 operator-() const {
        if (v_ == std::numeric_limits<std::int64_t>::min()) throw Overflow();
        return -v_;
    }
    Checked64& operator+=(Checked64 o) { return *this = *this + o; }
    Checked64& operator-=(Checked64 o) { return *this = *this - o; }

    friend bool operator==(Checked64 a, Checked64 b) { return a.v_ == b.v_; }
    friend bool operator!=(Checked64 a, Checked64 b) { return a.v_ != b.v_; }
    friend bool operator<(Checked64 a, Checked64 b) { return a.v_ < b.v_; }
    friend bool operator>(Checked64 a, Checked64 b) { return a.v_ > b.v_; }
    friend bool operator<=(Checked64 a, Checked64 b) { return a.v_ <= b.v_; }
    friend bool operator>=(Checked64 a, Checked64 b) { return a.v_ >= b.v_; }

private:
    std::int64_t v_ = 0;
};

inline Checked64 abs_value(Checked64 x) { return x < Checked64(0) ? -x : x; }

}  // namespace kring
