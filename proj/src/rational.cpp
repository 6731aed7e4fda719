#include "fpcert/rational.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace fpcert {

Rational rational_from_decimal(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    if (s.empty()) throw std::invalid_argument("empty numeric literal");

    bool neg = false;
    std::size_t i = 0;
    if (s[i] == '+' || s[i] == '-') {
        neg = (s[i] == '-');
        ++i;
    }

    std::string digits;
    long frac_len = 0;
    bool saw_digit = false, saw_dot = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            saw_digit = true;
            if (saw_dot) ++frac_len;
        } else if (c == '.') {
            if (saw_dot) throw std::invalid_argument("malformed literal: " + text);
            saw_dot = true;
        } else if (c == 'e' || c == 'E') {
            break;
        } else {
            throw std::invalid_argument("malformed literal: " + text);
        }
    }
    if (!saw_digit) throw std::invalid_argument("malformed literal: " + text);

    long exp10 = 0;
    if (i < s.size()) {
        // exponent part
        ++i;
        bool eneg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            eneg = (s[i] == '-');
            ++i;
        }
        if (i >= s.size()) throw std::invalid_argument("malformed exponent: " + text);
        long v = 0;
        for (; i < s.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw std::invalid_argument("malformed exponent: " + text);
            v = v * 10 + (s[i] - '0');
            if (v > 100000) throw std::invalid_argument("exponent out of range: " + text);
        }
        exp10 = eneg ? -v : v;
    }

    Integer num(digits.empty() ? "0" : digits, 10);
    if (neg) num = -num;
    long e = exp10 - frac_len;
    Rational out(num);
    if (e > 0) {
        Integer p;
        mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e));
        out *= Rational(p);
    } else if (e < 0) {
        Integer p;
        mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(-e));
        out /= Rational(p);
    }
    out.canonicalize();
    return out;
}

double to_double_nearest(const Rational& r) {
    // mpq_get_d truncates toward zero; walk to the true nearest neighbour by
    // exact comparison of the midpoints.
    double d = mpq_get_d(r.get_mpq_t());
    if (!std::isfinite(d)) return d;
    for (int step = 0; step < 4; ++step) {
        double up = std::nextafter(d, std::numeric_limits<double>::infinity());
        double dn = std::nextafter(d, -std::numeric_limits<double>::infinity());
        Rational err = rational_abs(r - rational_from_double_exact(d));
        if (std::isfinite(up)) {
            Rational e2 = rational_abs(r - rational_from_double_exact(up));
            if (e2 < err) {
                d = up;
                continue;
            }
        }
        if (std::isfinite(dn)) {
            Rational e2 = rational_abs(r - rational_from_double_exact(dn));
            if (e2 < err) {
                d = dn;
                continue;
            }
        }
        break;
    }
    return d;
}

double to_double_down(const Rational& r) {
    double d = to_double_nearest(r);
    if (!std::isfinite(d)) return d > 0 ? std::numeric_limits<double>::max() : d;
    while (rational_from_double_exact(d) > r) d = std::nextafter(d, -std::numeric_limits<double>::infinity());
    return d;
}

double to_double_up(const Rational& r) {
    double d = to_double_nearest(r);
    if (!std::isfinite(d)) return d < 0 ? -std::numeric_limits<double>::max() : d;
    while (rational_from_double_exact(d) < r) d = std::nextafter(d, std::numeric_limits<double>::infinity());
    return d;
}

std::string rational_to_string(const Rational& r) { return r.get_str(); }

std::string rational_to_decimal_string(const Rational& r, int significant_digits) {
    if (r == 0) return "0";
    if (significant_digits < 1) significant_digits = 1;
    Integer num = r.get_num();
    Integer den = r.get_den();
    bool neg = num < 0;
    if (neg) num = -num;

    // Find e with 10^e <= num/den < 10^(e+1).
    long e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 10)) + 1;
    auto pow10 = [](long k) {
        Integer p;
        mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k < 0 ? -k : k));
        return p;
    };
    auto cmp_pow = [&](long k) {
        // sign of num/den - 10^k
        if (k >= 0) return cmp(num, den * pow10(k));
        return cmp(num * pow10(-k), den);
    };
    while (cmp_pow(e) < 0) --e;
    while (cmp_pow(e + 1) >= 0) ++e;

    // digits = round(num/den * 10^(digits_wanted-1-e))
    long shift = significant_digits - 1 - e;
    Integer scaled_num = num, scaled_den = den;
    if (shift >= 0)
        scaled_num *= pow10(shift);
    else
        scaled_den *= pow10(shift);
    Integer q, rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), scaled_num.get_mpz_t(), scaled_den.get_mpz_t());
    if (cmp(rem * 2, scaled_den) >= 0) q += 1;

    std::string digits = q.get_str();
    if (static_cast<long>(digits.size()) > significant_digits) {
        // rounding overflowed to the next power of ten
        digits = digits.substr(0, significant_digits);
        ++e;
    }
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();

    std::ostringstream out;
    if (neg) out << '-';
    if (e >= -4 && e < significant_digits + 2) {
        if (e >= 0) {
            if (static_cast<long>(digits.size()) <= e + 1) {
                out << digits << std::string(e + 1 - digits.size(), '0');
            } else {
                out << digits.substr(0, e + 1) << "." << digits.substr(e + 1);
            }
        } else {
            out << "0." << std::string(-e - 1, '0') << digits;
        }
    } else {
        out << digits.substr(0, 1);
        if (digits.size() > 1) out << "." << digits.substr(1);
        out << "e" << (e >= 0 ? "+" : "") << e;
    }
    return out.str();
}

}  // namespace fpcert
