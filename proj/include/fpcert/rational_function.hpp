#pragma once

#include <stdexcept>

#include "fpcert/polynomial.hpp"

namespace fpcert {

// Quotient of two polynomials with a shared variable count. Denominators are
// kept un-factored; constant denominators are folded into the numerator so the
// polynomial case always reads den == 1.
template <class S>
class RationalFunction {
  public:
    RationalFunction() = default;
    explicit RationalFunction(Polynomial<S> num)
        : num_(std::move(num)), den_(Polynomial<S>::constant(num_.nvars(), S(1))) {}
    RationalFunction(Polynomial<S> num, Polynomial<S> den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::invalid_argument("zero denominator");
        if (num_.nvars() != den_.nvars()) throw std::invalid_argument("variable-count mismatch");
        normalize();
    }

    static RationalFunction constant(std::size_t nvars, const S& c) {
        return RationalFunction(Polynomial<S>::constant(nvars, c));
    }

    const Polynomial<S>& num() const { return num_; }
    const Polynomial<S>& den() const { return den_; }
    std::size_t nvars() const { return num_.nvars(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    // den == 1 required; throws otherwise.
    const Polynomial<S>& as_polynomial() const {
        if (!is_polynomial() || den_.constant_value() != S(1))
            throw std::logic_error("rational function is not in polynomial form");
        return num_;
    }

    RationalFunction operator+(const RationalFunction& o) const {
        if (den_ == o.den_) return RationalFunction(num_ + o.num_, den_);
        return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    RationalFunction operator-(const RationalFunction& o) const {
        if (den_ == o.den_) return RationalFunction(num_ - o.num_, den_);
        return RationalFunction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    RationalFunction operator-() const {
        RationalFunction r = *this;
        r.num_ = -r.num_;
        return r;
    }
    RationalFunction operator*(const RationalFunction& o) const {
        return RationalFunction(num_ * o.num_, den_ * o.den_);
    }
    RationalFunction operator/(const RationalFunction& o) const {
        if (o.num_.is_zero()) throw std::invalid_argument("division by zero rational function");
        return RationalFunction(num_ * o.den_, den_ * o.num_);
    }

    bool operator==(const RationalFunction& o) const {
        // cross-multiplied identity; exact in the rational backend
        return num_ * o.den_ == o.num_ * den_;
    }

    S eval(const std::vector<S>& point) const {
        S d = den_.eval(point);
        if (d == S(0)) throw std::domain_error("rational function evaluated at a pole");
        return num_.eval(point) / d;
    }

    std::string to_string() const {
        if (is_polynomial()) return num_.to_string();
        return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
    }

  private:
    void normalize() {
        if (den_.is_constant()) {
            S c = den_.constant_value();
            if (c != S(1)) {
                Polynomial<S> scaled(num_.nvars());
                for (const auto& [m, v] : num_.terms()) scaled.add_term(m, v / c);
                num_ = scaled;
            }
            den_ = Polynomial<S>::constant(num_.nvars(), S(1));
        }
    }

    Polynomial<S> num_;
    Polynomial<S> den_;
};

}  // namespace fpcert
