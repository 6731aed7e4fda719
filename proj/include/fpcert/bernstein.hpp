#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "fpcert/multi_index.hpp"
#include "fpcert/polynomial.hpp"
#include "fpcert/rational_function.hpp"
#include "fpcert/rounding.hpp"

namespace fpcert {

struct NonPositiveDenominatorCoefficient : std::runtime_error {
    NonPositiveDenominatorCoefficient()
        : std::runtime_error("denominator Bernstein expansion has a nonpositive coefficient") {}
};

// Dense tensor of Bernstein coefficients b_alpha, alpha <= k, for one
// polynomial on the unit box.
template <class S>
struct BernsteinExpansion {
    MultiIndex k;
    MultiIndex source_degree;
    std::vector<S> coeffs;      // odometer order, last dimension fastest
    std::vector<std::size_t> strides;

    std::size_t index(const MultiIndex& alpha) const {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < alpha.size(); ++i) idx += alpha[i] * strides[i];
        return idx;
    }
    const S& at(const MultiIndex& alpha) const { return coeffs[index(alpha)]; }
    std::size_t count() const { return coeffs.size(); }
};

template <class S>
struct BernBound {
    S lower{};
    S upper{};
    bool sharp_lower = false;
    bool sharp_upper = false;
    MultiIndex k_used;
};

// Coefficients of the multi-degree-k expansion via the summation formula
// b_alpha = sum_{beta <= alpha} C(alpha,beta)/C(k,beta) f_beta (inclusive sum;
// the sum only visits the nonzero monomials of p).
template <class S>
BernsteinExpansion<S> bernstein_coeffs(const Polynomial<S>& p, const MultiIndex& k);

// Range enclosure from coefficient extrema, with Property-4 corner sharpness.
template <class S>
BernBound<S> enclosure(const BernsteinExpansion<S>& exp);

// Same polynomial re-expressed at a higher multi-degree.
template <class S>
BernsteinExpansion<S> degree_elevate(const BernsteinExpansion<S>& exp, const MultiIndex& k2);

// Rational range enclosure from numerator/denominator coefficient ratios;
// requires strictly positive denominator coefficients.
template <class S>
BernBound<S> rational_enclosure(const BernsteinExpansion<S>& num, const BernsteinExpansion<S>& den);

template <class S>
struct LinearBound {
    bool finite = true;
    S value{};                  // \bar l'_k; -value is the lower bound
    MultiIndex k_used;
    bool sharp = false;         // argmax of the |b|-sums sits at a box corner
};

// \bar l'_k = max_alpha sum_j |b_alpha^{(s_j)}| for polynomial coefficient
// functions s_j.
template <class S>
LinearBound<S> linear_error_bound_poly(const std::vector<Polynomial<S>>& s, const MultiIndex& k);

// Rational variant: max_alpha sum_j |b^{(p_j)}| / b^{(q_j^2)}; on a nonpositive
// denominator coefficient the degree is elevated uniformly (+1, up to
// max_elevations) before giving up and reporting an infinite bound.
template <class S>
LinearBound<S> linear_error_bound_rational(const std::vector<RationalFunction<S>>& s, MultiIndex k,
                                           int max_elevations);

// Full Bernstein engine pass over an error form.
template <class S>
struct BernOutcome {
    bool finite = true;
    S linear_bound{};           // \bar l'_k (scaled by 1/eps)
    Interval<S> linear_interval{S(0)};  // eps * [-\bar l', \bar l']
    Interval<S> h{S(0)};        // I^h
    Interval<S> total_interval{S(0)};
    S total{};                  // max(|lo|, |hi|)
    MultiIndex k_used;
    bool sharp = false;
    bool rational_route = false;
};

template <class S>
BernOutcome<S> fpbern_run(const ErrorForm& ef, std::optional<MultiIndex> k_req = std::nullopt,
                          int max_elevations = 3);

// Theorem-7 style convergence-rate diagnostic (3 L_m / k) C(d+1,3) n^d with
// L(s) = max_alpha |s_alpha| alpha! / |alpha|!. Purely informational.
Rational convergence_bound(const std::vector<Polynomial<Rational>>& s, unsigned k);

// Exact binomial helper shared by the expansion code and the LP assembly.
Integer binomial(unsigned long n, unsigned long k);

}  // namespace fpcert
