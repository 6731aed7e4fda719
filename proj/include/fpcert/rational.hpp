#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace fpcert {

// Exact arbitrary-precision rational scalar. mpq_class keeps values
// canonicalized (lowest terms, positive denominator), which is exactly the
// invariant the exact backend needs.
using Integer = mpz_class;
using Rational = mpq_class;

inline Rational rational_from_int(long v) { return Rational(v); }

// Canonicalized num/den construction (the raw two-argument mpq_class
// constructor does not reduce to lowest terms).
inline Rational frac(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}
inline Rational frac(const Integer& num, const Integer& den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Parses an integer, decimal or scientific literal into the exact rational it
// denotes ("0.6" -> 3/5, "42.7e-7" -> 427/10^8). Throws std::invalid_argument
// on malformed input.
Rational rational_from_decimal(const std::string& text);

// Exact value of a finite double (every finite double is a dyadic rational).
inline Rational rational_from_double_exact(double d) {
    if (!std::isfinite(d)) throw std::invalid_argument("non-finite double has no rational value");
    Rational r;
    mpq_set_d(r.get_mpq_t(), d);
    return r;
}

// Nearest double to r (ties toward the truncated candidate's neighbors are
// resolved by exact comparison, so the result is the true round-to-nearest).
double to_double_nearest(const Rational& r);

// Directed conversions: largest double <= r, smallest double >= r.
double to_double_down(const Rational& r);
double to_double_up(const Rational& r);

// True when r is exactly a binary64 value.
inline bool is_representable_double(const Rational& r) {
    double d = to_double_nearest(r);
    if (!std::isfinite(d)) return false;
    return rational_from_double_exact(d) == r;
}

inline Rational rational_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline Rational rational_pow(const Rational& base, unsigned e) {
    Rational out(1);
    Rational b = base;
    unsigned k = e;
    while (k) {
        if (k & 1u) out *= b;
        b *= b;
        k >>= 1;
    }
    return out;
}

// 2^-53, the binary64 round-to-nearest unit roundoff.
inline Rational default_machine_eps() {
    Rational eps(1);
    mpq_div_2exp(eps.get_mpq_t(), eps.get_mpq_t(), 53);
    return eps;
}

std::string rational_to_string(const Rational& r);

// Decimal rendering with the given number of significant digits (round to
// nearest, away on ties). Used for reports; never used in certified math.
std::string rational_to_decimal_string(const Rational& r, int significant_digits = 17);

}  // namespace fpcert
