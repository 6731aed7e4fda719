#include "fpcert/expr.hpp"

#include <algorithm>

namespace fpcert {

int Dag::intern(ExprNode n) {
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
}

int Dag::add_const(const Rational& v, int num_seeds, int den_seeds) {
    auto key = std::make_tuple(v, num_seeds, den_seeds);
    auto it = const_memo_.find(key);
    if (it != const_memo_.end()) return it->second;
    ExprNode n;
    n.op = ExprOp::Const;
    n.value = v;
    n.num_seeds = num_seeds;
    n.den_seeds = den_seeds;
    int id = intern(std::move(n));
    const_memo_.emplace(key, id);
    return id;
}

int Dag::add_var(int var_index) {
    auto it = var_memo_.find(var_index);
    if (it != var_memo_.end()) return it->second;
    ExprNode n;
    n.op = ExprOp::Var;
    n.var = var_index;
    int id = intern(std::move(n));
    var_memo_.emplace(var_index, id);
    return id;
}

int Dag::add_binary(ExprOp op, int a, int b) {
    const ExprNode& na = nodes_.at(a);
    const ExprNode& nb = nodes_.at(b);
    if (op == ExprOp::Div && nb.is_const() && nb.value == 0)
        throw std::domain_error("division by zero constant");
    if (na.is_const() && nb.is_const()) {
        switch (op) {
            case ExprOp::Mul:
                return add_const(na.value * nb.value, na.num_seeds + nb.num_seeds,
                                 na.den_seeds + nb.den_seeds);
            case ExprOp::Div:
                if (nb.value == 0) throw std::domain_error("division by zero constant");
                return add_const(na.value / nb.value, na.num_seeds + nb.den_seeds,
                                 na.den_seeds + nb.num_seeds);
            case ExprOp::Add:
            case ExprOp::Sub:
                if (na.seedless() && nb.seedless())
                    return add_const(op == ExprOp::Add ? Rational(na.value + nb.value)
                                                       : Rational(na.value - nb.value));
                break;  // a rounded constant keeps its own node and operation
            default:
                break;
        }
    }
    auto key = std::make_tuple(static_cast<int>(op), a, b);
    auto it = binary_memo_.find(key);
    if (it != binary_memo_.end()) return it->second;
    ExprNode n;
    n.op = op;
    n.a = a;
    n.b = b;
    int id = intern(std::move(n));
    binary_memo_.emplace(key, id);
    return id;
}

int Dag::add_neg(int a) {
    const ExprNode& na = nodes_.at(a);
    if (na.is_const()) return add_const(Rational(-na.value), na.num_seeds, na.den_seeds);
    auto key = std::make_tuple(static_cast<int>(ExprOp::Neg), a, -1);
    auto it = binary_memo_.find(key);
    if (it != binary_memo_.end()) return it->second;
    ExprNode n;
    n.op = ExprOp::Neg;
    n.a = a;
    int id = intern(std::move(n));
    binary_memo_.emplace(key, id);
    return id;
}

int Dag::add_pow(int a, unsigned k) {
    if (k == 0) return add_const(Rational(1));
    int acc = a;
    for (unsigned i = 1; i < k; ++i) acc = add_binary(ExprOp::Mul, acc, a);
    return acc;
}

std::vector<int> Dag::postorder(int root) const {
    std::vector<int> order;
    std::vector<char> seen(nodes_.size(), 0);
    std::vector<std::pair<int, bool>> stack{{root, false}};
    while (!stack.empty()) {
        auto [id, expanded] = stack.back();
        stack.pop_back();
        if (id < 0) continue;
        if (expanded) {
            order.push_back(id);
            continue;
        }
        if (seen[id]) continue;
        seen[id] = 1;
        stack.emplace_back(id, true);
        const ExprNode& n = nodes_[id];
        // push right before left so left child lands first in the order
        stack.emplace_back(n.b, false);
        stack.emplace_back(n.a, false);
    }
    return order;
}

bool Dag::contains_division(int root) const {
    // divisions with constant denominators keep the function polynomial
    std::vector<int> order = postorder(root);
    std::vector<char> constant(nodes_.size(), 0);
    for (int id : order) {
        const ExprNode& n = nodes_[id];
        switch (n.op) {
            case ExprOp::Const: constant[id] = 1; break;
            case ExprOp::Var: constant[id] = 0; break;
            case ExprOp::Neg: constant[id] = constant[n.a]; break;
            default: constant[id] = constant[n.a] && constant[n.b]; break;
        }
        if (n.op == ExprOp::Div && !constant[n.b]) return true;
    }
    return false;
}

template <class S>
Interval<S> interval_eval(const Dag& dag, int root, std::span<const Interval<S>> box) {
    std::vector<int> order = dag.postorder(root);
    std::vector<Interval<S>> val(dag.size());
    for (int id : order) {
        const ExprNode& n = dag.node(id);
        switch (n.op) {
            case ExprOp::Const: {
                if constexpr (std::is_same_v<S, Rational>)
                    val[id] = Interval<S>(n.value, n.value);
                else
                    val[id] = widen_outward(n.value, n.value);
                break;
            }
            case ExprOp::Var:
                val[id] = box[n.var];
                break;
            case ExprOp::Add:
                val[id] = val[n.a] + val[n.b];
                break;
            case ExprOp::Sub:
                val[id] = val[n.a] - val[n.b];
                break;
            case ExprOp::Mul:
                val[id] = val[n.a] * val[n.b];
                break;
            case ExprOp::Div:
                val[id] = val[n.a] / val[n.b];
                break;
            case ExprOp::Neg:
                val[id] = -val[n.a];
                break;
        }
    }
    return val[root];
}

template Interval<Rational> interval_eval<Rational>(const Dag&, int, std::span<const Interval<Rational>>);
template Interval<double> interval_eval<double>(const Dag&, int, std::span<const Interval<double>>);

Polynomial<Rational> dag_to_polynomial(const Dag& dag, int root, std::size_t nvars) {
    std::vector<int> order = dag.postorder(root);
    std::vector<Polynomial<Rational>> val(dag.size());
    for (int id : order) {
        const ExprNode& n = dag.node(id);
        switch (n.op) {
            case ExprOp::Const:
                val[id] = Polynomial<Rational>::constant(nvars, n.value);
                break;
            case ExprOp::Var:
                val[id] = Polynomial<Rational>::variable(nvars, n.var);
                break;
            case ExprOp::Add:
                val[id] = val[n.a] + val[n.b];
                break;
            case ExprOp::Sub:
                val[id] = val[n.a] - val[n.b];
                break;
            case ExprOp::Mul:
                val[id] = val[n.a] * val[n.b];
                break;
            case ExprOp::Div: {
                if (!val[n.b].is_constant())
                    throw std::domain_error("expression is not a polynomial (contains division)");
                Rational c = val[n.b].constant_value();
                if (c == 0) throw std::domain_error("division by zero");
                val[id] = val[n.a].scaled(Rational(1) / c);
                break;
            }
            case ExprOp::Neg:
                val[id] = -val[n.a];
                break;
        }
    }
    return val[root];
}

RationalFunction<Rational> dag_to_rational_function(const Dag& dag, int root, std::size_t nvars) {
    std::vector<int> order = dag.postorder(root);
    std::vector<RationalFunction<Rational>> val(dag.size());
    for (int id : order) {
        const ExprNode& n = dag.node(id);
        switch (n.op) {
            case ExprOp::Const:
                val[id] = RationalFunction<Rational>::constant(nvars, n.value);
                break;
            case ExprOp::Var:
                val[id] = RationalFunction<Rational>(Polynomial<Rational>::variable(nvars, n.var));
                break;
            case ExprOp::Add:
                val[id] = val[n.a] + val[n.b];
                break;
            case ExprOp::Sub:
                val[id] = val[n.a] - val[n.b];
                break;
            case ExprOp::Mul:
                val[id] = val[n.a] * val[n.b];
                break;
            case ExprOp::Div:
                val[id] = val[n.a] / val[n.b];
                break;
            case ExprOp::Neg:
                val[id] = -val[n.a];
                break;
        }
    }
    return val[root];
}

Rational dag_eval(const Dag& dag, int root, const std::vector<Rational>& point) {
    std::vector<int> order = dag.postorder(root);
    std::vector<Rational> val(dag.size());
    for (int id : order) {
        const ExprNode& n = dag.node(id);
        switch (n.op) {
            case ExprOp::Const:
                val[id] = n.value;
                break;
            case ExprOp::Var:
                val[id] = point.at(n.var);
                break;
            case ExprOp::Add:
                val[id] = val[n.a] + val[n.b];
                break;
            case ExprOp::Sub:
                val[id] = val[n.a] - val[n.b];
                break;
            case ExprOp::Mul:
                val[id] = val[n.a] * val[n.b];
                break;
            case ExprOp::Div:
                if (val[n.b] == 0) throw std::domain_error("division by zero during evaluation");
                val[id] = val[n.a] / val[n.b];
                break;
            case ExprOp::Neg:
                val[id] = -val[n.a];
                break;
        }
    }
    return val[root];
}

}  // namespace fpcert
