#pragma once

#include <string>
#include <vector>

#include "fpcert/expr.hpp"
#include "fpcert/interval.hpp"
#include "fpcert/rational_function.hpp"

namespace fpcert {

// The rounded expression fhat(x, e). Error variables live as (1+e_j) factors
// attached to DAG nodes: one shared variable per program variable, one per
// rounded constant literal, one per arithmetic operation node. den_evars
// holds factors that sit below a constant division fold, i.e. value/(1+e_j).
struct RoundedProgram {
    Program program;
    std::vector<std::vector<int>> num_evars;
    std::vector<std::vector<int>> den_evars;
    int m = 0;
    std::vector<std::string> var_map;
};

// Applies the simple rounding model rnd(v) = v(1+e). Exactly representable
// binary64 constants receive no error variable.
RoundedProgram apply_rounding_model(const Program& prog);

// r(x,e) = fhat(x,e) - f(x) = sum_j s_j(x) e_j + h(x,e). The s_j are exact
// rational functions of x; for polynomial bodies every denominator is 1.
struct ErrorForm {
    RoundedProgram rounded;
    std::vector<RationalFunction<Rational>> s;
    Rational eps;

    int m() const { return rounded.m; }
    std::size_t nvars() const { return rounded.program.nvars(); }
    const Program& program() const { return rounded.program; }
};

// Differentiates fhat with respect to each e_j at e = 0 (one reverse-mode
// sweep over the DAG) and records the resulting s_j.
ErrorForm taylor_split(RoundedProgram rounded, Rational eps);

inline ErrorForm make_error_form(const Program& prog, const Rational& eps) {
    return taylor_split(apply_rounding_model(prog), eps);
}

// Interval enclosure of h = r - l over X x [-eps, eps]^m, computed by a
// first-order Taylor-form evaluation of fhat over the DAG: every node carries
// an enclosure of its e = 0 value, of its first-order e coefficients, and of
// everything of higher order. The root's higher-order slot is I^h.
template <class S>
Interval<S> bound_remainder(const ErrorForm& ef);

// Exact evaluations used by tests and the soundness samplers.
Rational fhat_eval(const RoundedProgram& rp, const std::vector<Rational>& x,
                   const std::vector<Rational>& e);
Rational f_eval(const RoundedProgram& rp, const std::vector<Rational>& x);
Rational r_eval(const ErrorForm& ef, const std::vector<Rational>& x, const std::vector<Rational>& e);
Rational l_eval(const ErrorForm& ef, const std::vector<Rational>& x, const std::vector<Rational>& e);

// s_j rebased onto the unit box via x_i = lo_i + (hi_i - lo_i) y_i, exact.
std::vector<RationalFunction<Rational>> scaled_error_coefficients(const ErrorForm& ef);

}  // namespace fpcert
