#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "fpcert/interval.hpp"
#include "fpcert/polynomial.hpp"
#include "fpcert/rational.hpp"
#include "fpcert/rational_function.hpp"

namespace fpcert {

enum class ExprOp : uint8_t { Const, Var, Add, Sub, Mul, Div, Neg };

// DAG node. Constant nodes remember how many rounded literals were folded into
// them: each seed stands for one (1+e) factor the compiled constant carries
// (den_seeds for factors that ended up below a constant division).
struct ExprNode {
    ExprOp op = ExprOp::Const;
    int32_t a = -1;
    int32_t b = -1;
    int32_t var = -1;
    Rational value;
    int num_seeds = 0;
    int den_seeds = 0;

    bool is_const() const { return op == ExprOp::Const; }
    bool seedless() const { return num_seeds == 0 && den_seeds == 0; }
};

// Hash-consed expression DAG. Structurally identical subexpressions share one
// node, so repeated subterms cost a single rounding operation, matching how a
// compiler would emit them. Constant subexpressions fold bottom-up in exact
// rational arithmetic; additive folds are only taken when no rounding seed is
// involved (a rounded constant must keep its multiplicative error factor).
class Dag {
  public:
    int add_const(const Rational& v, int num_seeds = 0, int den_seeds = 0);
    int add_var(int var_index);
    int add_binary(ExprOp op, int a, int b);
    int add_neg(int a);
    // x^k as left-associated repeated multiplication; k == 0 yields 1.
    int add_pow(int a, unsigned k);

    const ExprNode& node(int id) const { return nodes_.at(id); }
    std::size_t size() const { return nodes_.size(); }

    // Nodes reachable from root, children before parents, deterministic.
    std::vector<int> postorder(int root) const;
    bool contains_division(int root) const;

  private:
    int intern(ExprNode n);

    std::vector<ExprNode> nodes_;
    std::map<std::tuple<int, int, int>, int> binary_memo_;
    std::map<int, int> var_memo_;
    std::map<std::tuple<Rational, int, int>, int> const_memo_;
};

// Parsed program: named variables with exact rational bounds, optional
// polynomial constraints 0 <= g(x), and the body DAG.
struct Program {
    std::string name;
    struct Var {
        std::string name;
        Rational lo;
        Rational hi;
    };
    std::vector<Var> vars;
    std::vector<Polynomial<Rational>> constraints;
    Dag dag;
    int root = -1;

    std::size_t nvars() const { return vars.size(); }
    bool body_is_polynomial() const { return !dag.contains_division(root); }
    std::vector<RatInterval> box() const {
        std::vector<RatInterval> b;
        b.reserve(vars.size());
        for (const auto& v : vars) b.emplace_back(v.lo, v.hi);
        return b;
    }
};

struct ParseError : std::runtime_error {
    int line;
    int col;
    ParseError(int line_, int col_, const std::string& msg)
        : std::runtime_error("parse error at " + std::to_string(line_) + ":" + std::to_string(col_) +
                             ": " + msg),
          line(line_),
          col(col_) {}
};

Program parse_program(const std::string& text);

// Plain DAG interval arithmetic over a box for the program variables.
// Sound enclosure of the range; exact endpoints in the rational backend,
// outward rounding in the float backend.
template <class S>
Interval<S> interval_eval(const Dag& dag, int root, std::span<const Interval<S>> box);

// Exact conversions of the e = 0 expression.
Polynomial<Rational> dag_to_polynomial(const Dag& dag, int root, std::size_t nvars);
RationalFunction<Rational> dag_to_rational_function(const Dag& dag, int root, std::size_t nvars);
Rational dag_eval(const Dag& dag, int root, const std::vector<Rational>& point);

}  // namespace fpcert
