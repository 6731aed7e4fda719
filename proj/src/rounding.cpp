#include "fpcert/rounding.hpp"

#include <algorithm>

namespace fpcert {

namespace {

const char* op_name(ExprOp op) {
    switch (op) {
        case ExprOp::Add: return "add";
        case ExprOp::Sub: return "sub";
        case ExprOp::Mul: return "mul";
        case ExprOp::Div: return "div";
        case ExprOp::Neg: return "neg";
        default: return "?";
    }
}

}  // namespace

RoundedProgram apply_rounding_model(const Program& prog) {
    RoundedProgram rp;
    rp.program = prog;
    rp.num_evars.assign(prog.dag.size(), {});
    rp.den_evars.assign(prog.dag.size(), {});

    std::vector<int> order = prog.dag.postorder(prog.root);

    // one shared error variable per program variable, in declaration order
    std::vector<int> var_nodes(prog.nvars(), -1);
    for (int id : order) {
        const ExprNode& n = prog.dag.node(id);
        if (n.op == ExprOp::Var) var_nodes[n.var] = id;
    }
    for (std::size_t v = 0; v < prog.nvars(); ++v) {
        if (var_nodes[v] < 0) continue;
        rp.num_evars[var_nodes[v]].push_back(rp.m++);
        rp.var_map.push_back("var:" + prog.vars[v].name);
    }

    // then constants and operations in DAG postorder
    for (int id : order) {
        const ExprNode& n = prog.dag.node(id);
        switch (n.op) {
            case ExprOp::Var:
                break;
            case ExprOp::Const:
                for (int i = 0; i < n.num_seeds; ++i) {
                    rp.num_evars[id].push_back(rp.m++);
                    rp.var_map.push_back("const:" + rational_to_decimal_string(n.value));
                }
                for (int i = 0; i < n.den_seeds; ++i) {
                    rp.den_evars[id].push_back(rp.m++);
                    rp.var_map.push_back("const:" + rational_to_decimal_string(n.value));
                }
                break;
            default:
                rp.num_evars[id].push_back(rp.m++);
                rp.var_map.push_back(std::string("op:") + op_name(n.op));
                break;
        }
    }
    return rp;
}

ErrorForm taylor_split(RoundedProgram rounded, Rational eps) {
    const Program& prog = rounded.program;
    const Dag& dag = prog.dag;
    const std::size_t n = prog.nvars();
    using RF = RationalFunction<Rational>;

    std::vector<int> order = dag.postorder(prog.root);

    // values of each node at e = 0 (these are the plain subexpressions of f)
    std::vector<RF> val(dag.size());
    for (int id : order) {
        const ExprNode& nd = dag.node(id);
        switch (nd.op) {
            case ExprOp::Const: val[id] = RF::constant(n, nd.value); break;
            case ExprOp::Var: val[id] = RF(Polynomial<Rational>::variable(n, nd.var)); break;
            case ExprOp::Add: val[id] = val[nd.a] + val[nd.b]; break;
            case ExprOp::Sub: val[id] = val[nd.a] - val[nd.b]; break;
            case ExprOp::Mul: val[id] = val[nd.a] * val[nd.b]; break;
            case ExprOp::Div: val[id] = val[nd.a] / val[nd.b]; break;
            case ExprOp::Neg: val[id] = -val[nd.a]; break;
        }
    }

    // adjoints d(fhat)/d(node) at e = 0, swept from the root down
    std::vector<RF> adj(dag.size(), RF::constant(n, Rational(0)));
    adj[prog.root] = RF::constant(n, Rational(1));
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int id = *it;
        const ExprNode& nd = dag.node(id);
        if (adj[id].is_zero()) continue;
        switch (nd.op) {
            case ExprOp::Add:
                adj[nd.a] = adj[nd.a] + adj[id];
                adj[nd.b] = adj[nd.b] + adj[id];
                break;
            case ExprOp::Sub:
                adj[nd.a] = adj[nd.a] + adj[id];
                adj[nd.b] = adj[nd.b] - adj[id];
                break;
            case ExprOp::Mul:
                adj[nd.a] = adj[nd.a] + adj[id] * val[nd.b];
                adj[nd.b] = adj[nd.b] + adj[id] * val[nd.a];
                break;
            case ExprOp::Div:
                adj[nd.a] = adj[nd.a] + adj[id] / val[nd.b];
                adj[nd.b] = adj[nd.b] - adj[id] * val[id] / val[nd.b];
                break;
            case ExprOp::Neg:
                adj[nd.a] = adj[nd.a] - adj[id];
                break;
            default:
                break;
        }
    }

    // s_j = d(fhat)/d(e_j)(x, 0): the (1+e_j) factor at node v contributes
    // value(v) * adjoint(v), negated when the factor sits in a denominator.
    ErrorForm ef;
    ef.s.assign(rounded.m, RF::constant(n, Rational(0)));
    for (int id : order) {
        for (int j : rounded.num_evars[id]) ef.s[j] = ef.s[j] + adj[id] * val[id];
        for (int j : rounded.den_evars[id]) ef.s[j] = ef.s[j] - adj[id] * val[id];
    }
    ef.rounded = std::move(rounded);
    ef.eps = std::move(eps);
    return ef;
}

Rational fhat_eval(const RoundedProgram& rp, const std::vector<Rational>& x,
                   const std::vector<Rational>& e) {
    const Dag& dag = rp.program.dag;
    std::vector<int> order = dag.postorder(rp.program.root);
    std::vector<Rational> val(dag.size());
    for (int id : order) {
        const ExprNode& nd = dag.node(id);
        Rational v;
        switch (nd.op) {
            case ExprOp::Const: v = nd.value; break;
            case ExprOp::Var: v = x.at(nd.var); break;
            case ExprOp::Add: v = val[nd.a] + val[nd.b]; break;
            case ExprOp::Sub: v = val[nd.a] - val[nd.b]; break;
            case ExprOp::Mul: v = val[nd.a] * val[nd.b]; break;
            case ExprOp::Div:
                if (val[nd.b] == 0) throw std::domain_error("pole hit while evaluating fhat");
                v = val[nd.a] / val[nd.b];
                break;
            case ExprOp::Neg: v = -val[nd.a]; break;
        }
        for (int j : rp.num_evars[id]) v *= Rational(1) + e.at(j);
        for (int j : rp.den_evars[id]) {
            Rational f = Rational(1) + e.at(j);
            if (f == 0) throw std::domain_error("degenerate error assignment");
            v /= f;
        }
        val[id] = v;
    }
    return val[rp.program.root];
}

Rational f_eval(const RoundedProgram& rp, const std::vector<Rational>& x) {
    return dag_eval(rp.program.dag, rp.program.root, x);
}

Rational r_eval(const ErrorForm& ef, const std::vector<Rational>& x, const std::vector<Rational>& e) {
    return fhat_eval(ef.rounded, x, e) - f_eval(ef.rounded, x);
}

Rational l_eval(const ErrorForm& ef, const std::vector<Rational>& x, const std::vector<Rational>& e) {
    Rational acc(0);
    for (int j = 0; j < ef.m(); ++j) {
        if (ef.s[j].is_zero()) continue;
        acc += ef.s[j].eval(x) * e.at(j);
    }
    return acc;
}

namespace {

// First-order Taylor form in the error variables with interval coefficients:
// value = c(x) + sum_j lin_j(x) e_j + rem, with rem collecting everything of
// degree >= 2 in e over X x [-eps, eps]^m.
template <class S>
struct TForm {
    Interval<S> c;
    std::vector<Interval<S>> lin;
    Interval<S> rem;

    explicit TForm(int m) : c(S(0)), lin(m, Interval<S>::zero()), rem(S(0)) {}
};

template <class S>
Interval<S> lin_total(const TForm<S>& f, const Interval<S>& eball) {
    Interval<S> acc = Interval<S>::zero();
    for (const auto& l : f.lin) {
        if (l.lo == S(0) && l.hi == S(0)) continue;
        acc += l * eball;
    }
    return acc;
}

template <class S>
TForm<S> tf_add(const TForm<S>& u, const TForm<S>& v, bool sub) {
    TForm<S> w(static_cast<int>(u.lin.size()));
    w.c = sub ? u.c - v.c : u.c + v.c;
    for (std::size_t j = 0; j < u.lin.size(); ++j) w.lin[j] = sub ? u.lin[j] - v.lin[j] : u.lin[j] + v.lin[j];
    w.rem = sub ? u.rem - v.rem : u.rem + v.rem;
    return w;
}

template <class S>
TForm<S> tf_mul(const TForm<S>& u, const TForm<S>& v, const Interval<S>& eball) {
    TForm<S> w(static_cast<int>(u.lin.size()));
    Interval<S> lu = lin_total(u, eball), lv = lin_total(v, eball);
    Interval<S> vall = v.c + lv + v.rem;
    w.c = u.c * v.c;
    for (std::size_t j = 0; j < u.lin.size(); ++j) w.lin[j] = u.c * v.lin[j] + u.lin[j] * v.c;
    w.rem = lu * lv + u.rem * vall + (u.c + lu) * v.rem;
    return w;
}

template <class S>
TForm<S> tf_div(const TForm<S>& u, const TForm<S>& v, const Interval<S>& eball) {
    TForm<S> w(static_cast<int>(u.lin.size()));
    Interval<S> lu = lin_total(u, eball), lv = lin_total(v, eball);
    Interval<S> vall = v.c + lv + v.rem;
    if (vall.contains_zero() || v.c.contains_zero()) throw DivisionByZeroInterval();
    w.c = u.c / v.c;
    Interval<S> vc2 = v.c * v.c;
    for (std::size_t j = 0; j < u.lin.size(); ++j)
        w.lin[j] = (u.lin[j] * v.c - u.c * v.lin[j]) / vc2;
    // u/v - c - sum lin_j e_j = -P (vl+vr) / (v0^2 v) + R / (v0 v)
    // with P = ul v0 - u0 vl and R = ur v0 - u0 vr
    Interval<S> P = lu * v.c - u.c * lv;
    Interval<S> R = u.rem * v.c - u.c * v.rem;
    w.rem = -(P * (lv + v.rem)) / (vc2 * vall) + R / (v.c * vall);
    return w;
}

template <class S>
void tf_wrap_num(TForm<S>& f, int j, const Interval<S>& eball) {
    // f <- f * (1 + e_j)
    Interval<S> lf = lin_total(f, eball);
    f.rem = f.rem + (lf + f.rem) * eball;
    f.lin[j] += f.c;
}

template <class S>
TForm<S> tf_wrap_den(const TForm<S>& f, int j, const Interval<S>& eball) {
    // f / (1 + e_j)
    TForm<S> one(static_cast<int>(f.lin.size()));
    one.c = Interval<S>(S(1));
    one.lin[j] = Interval<S>(S(1));
    return tf_div(f, one, eball);
}

template <class S>
Interval<S> make_point(const Rational& v);

template <>
Interval<Rational> make_point<Rational>(const Rational& v) {
    return Interval<Rational>(v, v);
}
template <>
Interval<double> make_point<double>(const Rational& v) {
    return widen_outward(v, v);
}

}  // namespace

template <class S>
Interval<S> bound_remainder(const ErrorForm& ef) {
    const RoundedProgram& rp = ef.rounded;
    const Dag& dag = rp.program.dag;
    const int m = ef.m();

    Interval<S> eball;
    if constexpr (std::is_same_v<S, Rational>)
        eball = Interval<S>(-ef.eps, ef.eps);
    else
        eball = widen_outward(-ef.eps, ef.eps);

    std::vector<Interval<S>> box;
    for (const auto& v : rp.program.vars) {
        if constexpr (std::is_same_v<S, Rational>)
            box.emplace_back(v.lo, v.hi);
        else
            box.push_back(widen_outward(v.lo, v.hi));
    }

    std::vector<int> order = dag.postorder(rp.program.root);
    std::vector<TForm<S>> val(dag.size(), TForm<S>(m));
    for (int id : order) {
        const ExprNode& nd = dag.node(id);
        TForm<S> f(m);
        switch (nd.op) {
            case ExprOp::Const: f.c = make_point<S>(nd.value); break;
            case ExprOp::Var: f.c = box[nd.var]; break;
            case ExprOp::Add: f = tf_add(val[nd.a], val[nd.b], false); break;
            case ExprOp::Sub: f = tf_add(val[nd.a], val[nd.b], true); break;
            case ExprOp::Mul: f = tf_mul(val[nd.a], val[nd.b], eball); break;
            case ExprOp::Div: f = tf_div(val[nd.a], val[nd.b], eball); break;
            case ExprOp::Neg: {
                f = val[nd.a];
                f.c = -f.c;
                for (auto& l : f.lin) l = -l;
                f.rem = -f.rem;
                break;
            }
        }
        for (int j : rp.num_evars[id]) tf_wrap_num(f, j, eball);
        for (int j : rp.den_evars[id]) f = tf_wrap_den(f, j, eball);
        val[id] = std::move(f);
    }
    // fhat - f - l has no center and no first-order part left: the root's
    // higher-order slot encloses h outright.
    return val[rp.program.root].rem;
}

template Interval<Rational> bound_remainder<Rational>(const ErrorForm&);
template Interval<double> bound_remainder<double>(const ErrorForm&);

std::vector<RationalFunction<Rational>> scaled_error_coefficients(const ErrorForm& ef) {
    const auto& vars = ef.rounded.program.vars;
    std::vector<RationalFunction<Rational>> out;
    out.reserve(ef.s.size());
    for (const auto& rf : ef.s) {
        Polynomial<Rational> num = rf.num();
        Polynomial<Rational> den = rf.den();
        for (std::size_t i = 0; i < vars.size(); ++i) {
            num = affine_substitute(num, i, vars[i].lo, vars[i].hi);
            den = affine_substitute(den, i, vars[i].lo, vars[i].hi);
        }
        out.emplace_back(std::move(num), std::move(den));
    }
    return out;
}

}  // namespace fpcert
