#include "fpcert/bernstein.hpp"

#include <algorithm>

namespace fpcert {

Integer binomial(unsigned long n, unsigned long k) {
    Integer b;
    if (k > n) return Integer(0);
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

namespace {

template <class S>
S scalar_of(const Rational& r);
template <>
Rational scalar_of<Rational>(const Rational& r) {
    return r;
}
template <>
double scalar_of<double>(const Rational& r) {
    return to_double_nearest(r);
}

template <class S>
S abs_of(const S& v) {
    return v < S(0) ? S(-v) : v;
}

// odometer loop over all alpha <= k
template <class F>
void for_each_index(const MultiIndex& k, F&& f) {
    MultiIndex alpha(k.size());
    for (;;) {
        f(alpha);
        std::size_t i = k.size();
        bool advanced = false;
        while (i > 0) {
            --i;
            if (alpha[i] < k[i]) {
                ++alpha[i];
                for (std::size_t j = i + 1; j < k.size(); ++j) alpha[j] = 0;
                advanced = true;
                break;
            }
        }
        if (!advanced) return;
    }
}

std::vector<std::size_t> strides_for(const MultiIndex& k) {
    std::vector<std::size_t> s(k.size());
    std::size_t acc = 1;
    for (std::size_t i = k.size(); i-- > 0;) {
        s[i] = acc;
        acc *= k[i] + 1;
    }
    return s;
}

std::size_t tensor_count(const MultiIndex& k) {
    std::size_t acc = 1;
    for (std::size_t i = 0; i < k.size(); ++i) acc *= k[i] + 1;
    return acc;
}

bool is_corner(const MultiIndex& alpha, const MultiIndex& k) {
    for (std::size_t i = 0; i < alpha.size(); ++i)
        if (alpha[i] != 0 && alpha[i] != k[i]) return false;
    return true;
}

}  // namespace

template <class S>
BernsteinExpansion<S> bernstein_coeffs(const Polynomial<S>& p, const MultiIndex& k) {
    const std::size_t n = p.nvars();
    if (k.size() != n) throw std::invalid_argument("multi-degree length mismatch");
    MultiIndex d = p.multi_degree();
    if (!d.leq(k)) throw std::invalid_argument("expansion multi-degree below source degree");

    BernsteinExpansion<S> exp;
    exp.k = k;
    exp.source_degree = d;
    exp.strides = strides_for(k);
    exp.coeffs.assign(tensor_count(k), S(0));

    // scatter each monomial into the sub-tensor alpha >= beta with weight
    // C(alpha,beta)/C(k,beta), built per dimension
    for (const auto& [beta, c] : p.terms()) {
        std::vector<std::vector<S>> w(n);
        for (std::size_t i = 0; i < n; ++i) {
            const Rational denom(binomial(k[i], beta[i]));
            w[i].resize(k[i] - beta[i] + 1);
            for (uint32_t a = beta[i]; a <= k[i]; ++a)
                w[i][a - beta[i]] = scalar_of<S>(Rational(binomial(a, beta[i])) / denom);
        }
        MultiIndex span(n);
        for (std::size_t i = 0; i < n; ++i) span[i] = k[i] - beta[i];
        for_each_index(span, [&](const MultiIndex& off) {
            S weight = c;
            std::size_t idx = 0;
            for (std::size_t i = 0; i < n; ++i) {
                weight *= w[i][off[i]];
                idx += (beta[i] + off[i]) * exp.strides[i];
            }
            exp.coeffs[idx] += weight;
        });
    }
    return exp;
}

template <class S>
BernBound<S> enclosure(const BernsteinExpansion<S>& exp) {
    BernBound<S> b;
    b.k_used = exp.k;
    bool first = true;
    for_each_index(exp.k, [&](const MultiIndex& alpha) {
        const S& v = exp.at(alpha);
        bool corner = is_corner(alpha, exp.k);
        if (first || v < b.lower) {
            b.lower = v;
            b.sharp_lower = corner;
        } else if (!first && v == b.lower && corner) {
            b.sharp_lower = true;
        }
        if (first || v > b.upper) {
            b.upper = v;
            b.sharp_upper = corner;
        } else if (!first && v == b.upper && corner) {
            b.sharp_upper = true;
        }
        first = false;
    });
    return b;
}

template <class S>
BernsteinExpansion<S> degree_elevate(const BernsteinExpansion<S>& exp, const MultiIndex& k2) {
    if (k2.size() != exp.k.size()) throw std::invalid_argument("multi-degree length mismatch");
    if (!exp.k.leq(k2)) throw std::invalid_argument("elevation target below current multi-degree");

    BernsteinExpansion<S> cur = exp;
    for (std::size_t dim = 0; dim < k2.size(); ++dim) {
        if (k2[dim] == cur.k[dim]) continue;
        const uint32_t k_old = cur.k[dim];
        const uint32_t k_new = k2[dim];
        const uint32_t r = k_new - k_old;

        MultiIndex nk = cur.k;
        nk[dim] = k_new;
        BernsteinExpansion<S> next;
        next.k = nk;
        next.source_degree = cur.source_degree;
        next.strides = strides_for(nk);
        next.coeffs.assign(tensor_count(nk), S(0));

        // univariate elevation along dim:
        // b'_a = sum_j b_j C(k_old, j) C(r, a - j) / C(k_new, a)
        std::vector<std::vector<S>> w(k_new + 1);
        for (uint32_t a = 0; a <= k_new; ++a) {
            const Rational denom(binomial(k_new, a));
            uint32_t jlo = a > r ? a - r : 0;
            uint32_t jhi = std::min(a, k_old);
            w[a].resize(jhi - jlo + 1);
            for (uint32_t j = jlo; j <= jhi; ++j)
                w[a][j - jlo] =
                    scalar_of<S>(Rational(binomial(k_old, j) * binomial(r, a - j)) / denom);
        }
        MultiIndex outer = nk;
        outer[dim] = 0;
        for_each_index(outer, [&](const MultiIndex& base) {
            for (uint32_t a = 0; a <= k_new; ++a) {
                uint32_t jlo = a > r ? a - r : 0;
                uint32_t jhi = std::min(a, k_old);
                S acc(0);
                for (uint32_t j = jlo; j <= jhi; ++j) {
                    MultiIndex src = base;
                    src[dim] = j;
                    acc += w[a][j - jlo] * cur.at(src);
                }
                MultiIndex dst = base;
                dst[dim] = a;
                next.coeffs[next.index(dst)] = acc;
            }
        });
        cur = std::move(next);
    }
    return cur;
}

template <class S>
BernBound<S> rational_enclosure(const BernsteinExpansion<S>& num, const BernsteinExpansion<S>& den) {
    if (!(num.k == den.k)) throw std::invalid_argument("numerator/denominator multi-degree mismatch");
    BernBound<S> b;
    b.k_used = num.k;
    bool first = true;
    for (std::size_t i = 0; i < den.coeffs.size(); ++i) {
        if (!(den.coeffs[i] > S(0))) throw NonPositiveDenominatorCoefficient();
        S ratio = num.coeffs[i] / den.coeffs[i];
        if (first || ratio < b.lower) b.lower = ratio;
        if (first || ratio > b.upper) b.upper = ratio;
        first = false;
    }
    return b;
}

template <class S>
LinearBound<S> linear_error_bound_poly(const std::vector<Polynomial<S>>& s, const MultiIndex& k) {
    LinearBound<S> out;
    out.k_used = k;
    std::vector<S> sums(tensor_count(k), S(0));
    for (const auto& sj : s) {
        if (sj.is_zero()) continue;
        BernsteinExpansion<S> e = bernstein_coeffs(sj, k);
        for (std::size_t i = 0; i < sums.size(); ++i) sums[i] += abs_of(e.coeffs[i]);
    }
    std::vector<std::size_t> strides = strides_for(k);
    bool first = true;
    for_each_index(k, [&](const MultiIndex& alpha) {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < alpha.size(); ++i) idx += alpha[i] * strides[i];
        const S& v = sums[idx];
        bool corner = is_corner(alpha, k);
        if (first || v > out.value) {
            out.value = v;
            out.sharp = corner;
        } else if (!first && v == out.value && corner) {
            out.sharp = true;
        }
        first = false;
    });
    return out;
}

template <class S>
LinearBound<S> linear_error_bound_rational(const std::vector<RationalFunction<S>>& s, MultiIndex k,
                                           int max_elevations) {
    for (int attempt = 0;; ++attempt) {
        // every p_j and q_j^2 must fit under k
        MultiIndex need = k;
        for (const auto& sj : s) {
            need = MultiIndex::max(need, sj.num().multi_degree());
            need = MultiIndex::max(need, sj.den().multi_degree());
        }
        k = need;
        try {
            LinearBound<S> out;
            out.k_used = k;
            std::vector<S> sums(tensor_count(k), S(0));
            for (const auto& sj : s) {
                if (sj.num().is_zero()) continue;
                BernsteinExpansion<S> pe = bernstein_coeffs(sj.num(), k);
                BernsteinExpansion<S> qe = bernstein_coeffs(sj.den(), k);
                for (std::size_t i = 0; i < sums.size(); ++i) {
                    if (!(qe.coeffs[i] > S(0))) throw NonPositiveDenominatorCoefficient();
                    sums[i] += abs_of(pe.coeffs[i]) / qe.coeffs[i];
                }
            }
            bool first = true;
            std::vector<std::size_t> strides = strides_for(k);
            for_each_index(k, [&](const MultiIndex& alpha) {
                std::size_t idx = 0;
                for (std::size_t i = 0; i < alpha.size(); ++i) idx += alpha[i] * strides[i];
                const S& v = sums[idx];
                bool corner = is_corner(alpha, k);
                if (first || v > out.value) {
                    out.value = v;
                    out.sharp = corner;
                } else if (!first && v == out.value && corner) {
                    out.sharp = true;
                }
                first = false;
            });
            return out;
        } catch (const NonPositiveDenominatorCoefficient&) {
            if (attempt >= max_elevations) {
                LinearBound<S> inf;
                inf.finite = false;
                inf.k_used = k;
                return inf;
            }
            for (std::size_t i = 0; i < k.size(); ++i) k[i] += 1;
        }
    }
}

namespace {

template <class S>
std::vector<RationalFunction<S>> backend_coefficients(const ErrorForm& ef);

template <>
std::vector<RationalFunction<Rational>> backend_coefficients<Rational>(const ErrorForm& ef) {
    return scaled_error_coefficients(ef);
}
template <>
std::vector<RationalFunction<double>> backend_coefficients<double>(const ErrorForm& ef) {
    std::vector<RationalFunction<double>> out;
    for (const auto& rf : scaled_error_coefficients(ef))
        out.emplace_back(widen(rf.num()), widen(rf.den()));
    return out;
}

}  // namespace

template <class S>
BernOutcome<S> fpbern_run(const ErrorForm& ef, std::optional<MultiIndex> k_req, int max_elevations) {
    const std::size_t n = ef.nvars();
    BernOutcome<S> out;

    std::vector<RationalFunction<S>> s = backend_coefficients<S>(ef);
    bool polynomial_route = true;
    for (const auto& sj : s)
        if (!sj.is_polynomial()) polynomial_route = false;
    out.rational_route = !polynomial_route;

    // default multi-degree: the componentwise degrees of the coefficient
    // functions (the source multi-degree d; 2 max{d1, d2} covers the q_j^2
    // denominators on the rational route)
    MultiIndex k = k_req.value_or(MultiIndex::zeros(n));
    if (k.size() != n) throw std::invalid_argument("multi-degree length mismatch");
    for (const auto& sj : s) {
        k = MultiIndex::max(k, sj.num().multi_degree());
        k = MultiIndex::max(k, sj.den().multi_degree());
    }
    if (!polynomial_route && !k_req) {
        RationalFunction<Rational> body =
            dag_to_rational_function(ef.program().dag, ef.program().root, n);
        MultiIndex twice = MultiIndex::max(body.num().multi_degree(), body.den().multi_degree());
        for (std::size_t i = 0; i < n; ++i) twice[i] *= 2;
        k = MultiIndex::max(k, twice);
    }

    LinearBound<S> lb;
    if (polynomial_route) {
        std::vector<Polynomial<S>> polys;
        polys.reserve(s.size());
        for (const auto& sj : s) polys.push_back(sj.num());
        lb = linear_error_bound_poly(polys, k);
    } else {
        lb = linear_error_bound_rational(s, k, max_elevations);
    }
    out.k_used = lb.k_used;
    out.sharp = lb.sharp;
    if (!lb.finite) {
        out.finite = false;
        return out;
    }
    out.linear_bound = lb.value;

    out.h = bound_remainder<S>(ef);
    S eps = scalar_of<S>(ef.eps);
    out.linear_interval = Interval<S>(S(-(eps * lb.value)), S(eps * lb.value));
    out.total_interval = out.linear_interval + out.h;
    out.total = out.total_interval.mag();
    return out;
}

Rational convergence_bound(const std::vector<Polynomial<Rational>>& s, unsigned k) {
    if (s.empty()) return Rational(0);
    const std::size_t n = s.front().nvars();
    unsigned d = 0;
    Rational lm(0);
    for (const auto& sj : s) {
        d = std::max(d, sj.total_degree());
        Rational best(0);
        for (const auto& [alpha, c] : sj.terms()) {
            Integer fact_prod(1), fact_tot;
            for (std::size_t i = 0; i < alpha.size(); ++i) {
                Integer f;
                mpz_fac_ui(f.get_mpz_t(), alpha[i]);
                fact_prod *= f;
            }
            mpz_fac_ui(fact_tot.get_mpz_t(), alpha.total());
            Rational cand = rational_abs(c) * frac(fact_prod, fact_tot);
            if (cand > best) best = cand;
        }
        lm += best;
    }
    if (k < d) throw std::invalid_argument("order below degree");
    Rational nd = rational_pow(Rational(static_cast<long>(n)), d);
    return Rational(3) * lm / Rational(static_cast<long>(k)) * Rational(binomial(d + 1, 3)) * nd;
}

template BernsteinExpansion<Rational> bernstein_coeffs(const Polynomial<Rational>&, const MultiIndex&);
template BernsteinExpansion<double> bernstein_coeffs(const Polynomial<double>&, const MultiIndex&);
template BernBound<Rational> enclosure(const BernsteinExpansion<Rational>&);
template BernBound<double> enclosure(const BernsteinExpansion<double>&);
template BernsteinExpansion<Rational> degree_elevate(const BernsteinExpansion<Rational>&, const MultiIndex&);
template BernsteinExpansion<double> degree_elevate(const BernsteinExpansion<double>&, const MultiIndex&);
template BernBound<Rational> rational_enclosure(const BernsteinExpansion<Rational>&,
                                                const BernsteinExpansion<Rational>&);
template BernBound<double> rational_enclosure(const BernsteinExpansion<double>&,
                                              const BernsteinExpansion<double>&);
template LinearBound<Rational> linear_error_bound_poly(const std::vector<Polynomial<Rational>>&,
                                                       const MultiIndex&);
template LinearBound<double> linear_error_bound_poly(const std::vector<Polynomial<double>>&,
                                                     const MultiIndex&);
template LinearBound<Rational> linear_error_bound_rational(const std::vector<RationalFunction<Rational>>&,
                                                           MultiIndex, int);
template LinearBound<double> linear_error_bound_rational(const std::vector<RationalFunction<double>>&,
                                                         MultiIndex, int);
template BernOutcome<Rational> fpbern_run(const ErrorForm&, std::optional<MultiIndex>, int);
template BernOutcome<double> fpbern_run(const ErrorForm&, std::optional<MultiIndex>, int);

}  // namespace fpcert
