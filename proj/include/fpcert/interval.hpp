#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "fpcert/rational.hpp"

namespace fpcert {

struct DivisionByZeroInterval : std::runtime_error {
    DivisionByZeroInterval() : std::runtime_error("interval division by an interval containing zero") {}
};

namespace detail {

// Directed endpoint arithmetic. Exact for Rational; for double every
// correctly-rounded IEEE result is within one ulp of the true value, so a
// single nextafter step in the required direction is a sound bound.
inline double nudge_down(double x) {
    return std::nextafter(x, -std::numeric_limits<double>::infinity());
}
inline double nudge_up(double x) {
    return std::nextafter(x, std::numeric_limits<double>::infinity());
}

inline Rational add_down(const Rational& a, const Rational& b) { return a + b; }
inline Rational add_up(const Rational& a, const Rational& b) { return a + b; }
inline Rational sub_down(const Rational& a, const Rational& b) { return a - b; }
inline Rational sub_up(const Rational& a, const Rational& b) { return a - b; }
inline Rational mul_down(const Rational& a, const Rational& b) { return a * b; }
inline Rational mul_up(const Rational& a, const Rational& b) { return a * b; }
inline Rational div_down(const Rational& a, const Rational& b) { return a / b; }
inline Rational div_up(const Rational& a, const Rational& b) { return a / b; }

inline double add_down(double a, double b) { return nudge_down(a + b); }
inline double add_up(double a, double b) { return nudge_up(a + b); }
inline double sub_down(double a, double b) { return nudge_down(a - b); }
inline double sub_up(double a, double b) { return nudge_up(a - b); }
inline double mul_down(double a, double b) { return nudge_down(a * b); }
inline double mul_up(double a, double b) { return nudge_up(a * b); }
inline double div_down(double a, double b) { return nudge_down(a / b); }
inline double div_up(double a, double b) { return nudge_up(a / b); }

}  // namespace detail

template <class S>
struct Interval {
    S lo{};
    S hi{};

    Interval() = default;
    Interval(S v) : lo(v), hi(v) {}
    Interval(S l, S h) : lo(std::move(l)), hi(std::move(h)) {
        if (hi < lo) throw std::invalid_argument("interval endpoints out of order");
    }

    static Interval zero() { return Interval(S(0), S(0)); }
    static Interval symmetric(const S& mag) { return Interval(S(-mag), mag); }

    bool contains(const S& v) const { return lo <= v && v <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool contains_zero() const { return lo <= S(0) && S(0) <= hi; }
    S mag() const {
        S a = lo < S(0) ? S(-lo) : lo;
        S b = hi < S(0) ? S(-hi) : hi;
        return a < b ? b : a;
    }
    S width() const { return hi - lo; }

    Interval operator+(const Interval& o) const {
        return raw(detail::add_down(lo, o.lo), detail::add_up(hi, o.hi));
    }
    Interval operator-(const Interval& o) const {
        return raw(detail::sub_down(lo, o.hi), detail::sub_up(hi, o.lo));
    }
    Interval operator-() const { return raw(-hi, -lo); }

    Interval operator*(const Interval& o) const {
        S cands_dn[4] = {detail::mul_down(lo, o.lo), detail::mul_down(lo, o.hi),
                         detail::mul_down(hi, o.lo), detail::mul_down(hi, o.hi)};
        S cands_up[4] = {detail::mul_up(lo, o.lo), detail::mul_up(lo, o.hi),
                         detail::mul_up(hi, o.lo), detail::mul_up(hi, o.hi)};
        return raw(*std::min_element(cands_dn, cands_dn + 4), *std::max_element(cands_up, cands_up + 4));
    }

    Interval operator/(const Interval& o) const {
        if (o.contains_zero()) throw DivisionByZeroInterval();
        S cands_dn[4] = {detail::div_down(lo, o.lo), detail::div_down(lo, o.hi),
                         detail::div_down(hi, o.lo), detail::div_down(hi, o.hi)};
        S cands_up[4] = {detail::div_up(lo, o.lo), detail::div_up(lo, o.hi),
                         detail::div_up(hi, o.lo), detail::div_up(hi, o.hi)};
        return raw(*std::min_element(cands_dn, cands_dn + 4), *std::max_element(cands_up, cands_up + 4));
    }

    Interval& operator+=(const Interval& o) { return *this = *this + o; }
    Interval& operator-=(const Interval& o) { return *this = *this - o; }

    Interval pow(unsigned e) const {
        if (e == 0) return Interval(S(1), S(1));
        Interval acc = *this;
        // even powers of a zero-straddling interval stay nonnegative
        for (unsigned i = 1; i < e; ++i) acc = acc * *this;
        if (e % 2 == 0 && acc.lo < S(0) && contains_zero()) acc.lo = S(0);
        return acc;
    }

    static Interval hull(const Interval& a, const Interval& b) {
        return raw(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
    }

    bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }

  private:
    static Interval raw(S l, S h) {
        Interval r;
        r.lo = std::move(l);
        r.hi = std::move(h);
        return r;
    }
};

using RatInterval = Interval<Rational>;
using DblInterval = Interval<double>;

// Explicit widening of an exact interval to a double interval, rounding the
// endpoints outward so containment is preserved.
inline DblInterval widen_outward(const RatInterval& r) {
    DblInterval d;
    d.lo = to_double_down(r.lo);
    d.hi = to_double_up(r.hi);
    return d;
}

inline DblInterval widen_outward(const Rational& lo, const Rational& hi) {
    return widen_outward(RatInterval(lo, hi));
}

}  // namespace fpcert
