#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpcert/interval.hpp"
#include "fpcert/multi_index.hpp"
#include "fpcert/rational.hpp"

namespace fpcert {

// Sparse multivariate polynomial over scalar S (Rational or double).
// Invariants: no stored coefficient is zero; all keys have length nvars; the
// zero polynomial is the empty map.
template <class S>
class Polynomial {
  public:
    using TermMap = std::map<MultiIndex, S, GradedLexLess>;

    Polynomial() : nvars_(0) {}
    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

    static Polynomial zero(std::size_t nvars) { return Polynomial(nvars); }
    static Polynomial constant(std::size_t nvars, const S& c) {
        Polynomial p(nvars);
        p.add_term(MultiIndex::zeros(nvars), c);
        return p;
    }
    static Polynomial variable(std::size_t nvars, std::size_t i) {
        if (i >= nvars) throw std::out_of_range("variable index out of range");
        Polynomial p(nvars);
        p.add_term(MultiIndex::unit(nvars, i), S(1));
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_zero());
    }
    S constant_value() const {
        if (terms_.empty()) return S(0);
        auto it = terms_.find(MultiIndex::zeros(nvars_));
        return it == terms_.end() ? S(0) : it->second;
    }

    S coefficient(const MultiIndex& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? S(0) : it->second;
    }

    void add_term(const MultiIndex& m, const S& c) {
        if (m.size() != nvars_) throw std::invalid_argument("term length does not match nvars");
        if (c == S(0)) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == S(0)) terms_.erase(it);
        }
    }

    Polynomial operator+(const Polynomial& o) const {
        check_same_vars(o);
        Polynomial r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }
    Polynomial operator-(const Polynomial& o) const {
        check_same_vars(o);
        Polynomial r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, S(-c));
        return r;
    }
    Polynomial operator-() const {
        Polynomial r(nvars_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, S(-c));
        return r;
    }
    Polynomial operator*(const Polynomial& o) const {
        check_same_vars(o);
        Polynomial r(nvars_);
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_) r.add_term(ma + mb, ca * cb);
        return r;
    }
    Polynomial scaled(const S& c) const {
        Polynomial r(nvars_);
        if (c == S(0)) return r;
        for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
        return r;
    }
    Polynomial pow(unsigned e) const {
        Polynomial r = constant(nvars_, S(1));
        for (unsigned i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    bool operator==(const Polynomial& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    // Exact formal derivative with respect to one variable.
    Polynomial partial_derivative(std::size_t var) const {
        if (var >= nvars_) throw std::out_of_range("derivative variable out of range");
        Polynomial r(nvars_);
        for (const auto& [m, c] : terms_) {
            if (m[var] == 0) continue;
            MultiIndex m2 = m;
            m2[var] -= 1;
            r.add_term(m2, c * S(static_cast<int>(m[var])));
        }
        return r;
    }

    // Componentwise degree; all zeros for the zero polynomial.
    MultiIndex multi_degree() const {
        MultiIndex d = MultiIndex::zeros(nvars_);
        for (const auto& [m, c] : terms_)
            for (std::size_t i = 0; i < nvars_; ++i) d[i] = std::max(d[i], m[i]);
        return d;
    }
    uint32_t total_degree() const {
        uint32_t d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.total());
        return d;
    }

    S eval(std::span<const S> point) const {
        if (point.size() != nvars_) throw std::invalid_argument("evaluation point length mismatch");
        // power cache per variable up to its degree
        MultiIndex deg = multi_degree();
        std::vector<std::vector<S>> pows(nvars_);
        for (std::size_t i = 0; i < nvars_; ++i) {
            pows[i].resize(deg[i] + 1);
            pows[i][0] = S(1);
            for (uint32_t k = 1; k <= deg[i]; ++k) pows[i][k] = pows[i][k - 1] * point[i];
        }
        S acc(0);
        for (const auto& [m, c] : terms_) {
            S t = c;
            for (std::size_t i = 0; i < nvars_; ++i)
                if (m[i]) t *= pows[i][m[i]];
            acc += t;
        }
        return acc;
    }
    S eval(const std::vector<S>& point) const { return eval(std::span<const S>(point)); }

    // Naive interval enclosure: sum of |coeff| * box^alpha terms.
    Interval<S> interval_range(std::span<const Interval<S>> box) const {
        if (box.size() != nvars_) throw std::invalid_argument("box length mismatch");
        Interval<S> acc = Interval<S>::zero();
        for (const auto& [m, c] : terms_) {
            Interval<S> t(c, c);
            for (std::size_t i = 0; i < nvars_; ++i)
                if (m[i]) t = t * box[i].pow(m[i]);
            acc += t;
        }
        return acc;
    }
    Interval<S> interval_range(const std::vector<Interval<S>>& box) const {
        return interval_range(std::span<const Interval<S>>(box));
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [m, c] : terms_) {
            if (!s.empty()) s += " + ";
            if constexpr (std::is_same_v<S, Rational>)
                s += rational_to_string(c);
            else
                s += std::to_string(c);
            for (std::size_t i = 0; i < nvars_; ++i)
                if (m[i]) s += "*x" + std::to_string(i + 1) + (m[i] > 1 ? "^" + std::to_string(m[i]) : "");
        }
        return s;
    }

  private:
    void check_same_vars(const Polynomial& o) const {
        if (nvars_ != o.nvars_) throw std::invalid_argument("variable-count mismatch");
    }

    std::size_t nvars_;
    TermMap terms_;
};

// Substitutes x_var := a + (b-a) * y_var exactly; degree in var is preserved.
inline Polynomial<Rational> affine_substitute(const Polynomial<Rational>& p, std::size_t var,
                                              const Rational& a, const Rational& b) {
    if (var >= p.nvars()) throw std::out_of_range("substitution variable out of range");
    const Rational c = b - a;
    Polynomial<Rational> r(p.nvars());
    for (const auto& [m, coef] : p.terms()) {
        const uint32_t t = m[var];
        // (a + c*y)^t expanded binomially
        Integer binom;
        for (uint32_t i = 0; i <= t; ++i) {
            mpz_bin_uiui(binom.get_mpz_t(), t, i);
            Rational w = coef * Rational(binom) * rational_pow(a, t - i) * rational_pow(c, i);
            MultiIndex m2 = m;
            m2[var] = i;
            r.add_term(m2, w);
        }
    }
    return r;
}

inline Polynomial<double> widen(const Polynomial<Rational>& p) {
    Polynomial<double> r(p.nvars());
    for (const auto& [m, c] : p.terms()) r.add_term(m, to_double_nearest(c));
    return r;
}

}  // namespace fpcert
