#include "fpcert/krivine.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <future>
#include <sstream>

namespace fpcert {

NormalizedConstraints normalize_constraints(const Program& prog) {
    const std::size_t n = prog.nvars();
    NormalizedConstraints nc;
    nc.user_count = static_cast<int>(prog.constraints.size());

    std::vector<RatInterval> unit_box(n, RatInterval(Rational(0), Rational(1)));
    for (const auto& g0 : prog.constraints) {
        Polynomial<Rational> g = g0;
        for (std::size_t i = 0; i < n; ++i) g = affine_substitute(g, i, prog.vars[i].lo, prog.vars[i].hi);
        RatInterval range = g.interval_range(unit_box);
        Rational u = range.hi;
        if (!(u > 0)) u = 1;  // nonpositive sup: keep the constraint unscaled, still sound
        nc.scale_log.push_back(u);
        Polynomial<Rational> scaled(n);
        for (const auto& [mono, c] : g.terms()) scaled.add_term(mono, c / u);
        nc.g.push_back(std::move(scaled));
    }
    for (std::size_t i = 0; i < n; ++i) nc.g.push_back(Polynomial<Rational>::variable(n, i));
    return nc;
}

std::vector<Polynomial<Rational>> build_error_box_constraints(int m) {
    if (m < 1) throw std::invalid_argument("need at least one error variable");
    std::vector<Polynomial<Rational>> out;
    out.reserve(m);
    for (int j = 0; j < m; ++j) {
        Polynomial<Rational> g(m);
        g.add_term(MultiIndex::zeros(m), Rational(1, 2));
        g.add_term(MultiIndex::unit(m, j), Rational(1, 2));
        out.push_back(std::move(g));
    }
    return out;
}

std::vector<int> SparsityPattern::var_block(int j) const {
    std::vector<int> v;
    for (int i = 0; i < n; ++i) v.push_back(i);
    v.push_back(n + j);
    return v;
}

std::vector<int> SparsityPattern::constraint_block(int j) const {
    std::vector<int> v;
    for (int i = 0; i < p; ++i) v.push_back(i);
    v.push_back(p + j);
    return v;
}

bool SparsityPattern::running_intersection_holds() const {
    // I_{j+1} intersect (I_1 u ... u I_j) = {1..n}, contained in every I_s
    for (int j = 0; j + 1 < m; ++j) {
        std::vector<int> inter;
        std::vector<int> next = var_block(j + 1);
        for (int v : next)
            if (v < n) inter.push_back(v);
        if (static_cast<int>(inter.size()) != n) return false;
    }
    return true;
}

namespace {

// enumerate all exponent pairs (alpha, beta) with |alpha| + |beta| <= order
// in graded-lex order of the concatenated vector
template <class F>
void for_each_pair(int len, int order, F&& f) {
    MultiIndex cat(2 * len);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == 2 * len) {
            MultiIndex alpha(len), beta(len);
            for (int i = 0; i < len; ++i) alpha[i] = cat[i];
            for (int i = 0; i < len; ++i) beta[i] = cat[len + i];
            f(alpha, beta);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            cat[pos] = v;
            rec(pos + 1, left - v);
        }
        cat[pos] = 0;
    };
    rec(0, order);
}

Polynomial<Rational> lift(const Polynomial<Rational>& p, std::size_t new_nvars, std::size_t offset) {
    Polynomial<Rational> out(new_nvars);
    for (const auto& [m, c] : p.terms()) {
        MultiIndex m2(new_nvars);
        for (std::size_t i = 0; i < m.size(); ++i) m2[offset + i] = m[i];
        out.add_term(m2, c);
    }
    return out;
}

struct PowerTable {
    std::vector<std::vector<Polynomial<Rational>>> gpow, hpow;  // g^a and (1-g)^b
};

PowerTable build_powers(const std::vector<Polynomial<Rational>>& gs, int order) {
    PowerTable t;
    t.gpow.resize(gs.size());
    t.hpow.resize(gs.size());
    for (std::size_t i = 0; i < gs.size(); ++i) {
        const auto& g = gs[i];
        Polynomial<Rational> one = Polynomial<Rational>::constant(g.nvars(), Rational(1));
        Polynomial<Rational> gin = one - g;
        t.gpow[i].push_back(one);
        t.hpow[i].push_back(one);
        for (int a = 1; a <= order; ++a) {
            t.gpow[i].push_back(t.gpow[i][a - 1] * g);
            t.hpow[i].push_back(t.hpow[i][a - 1] * gin);
        }
    }
    return t;
}

}  // namespace

KSAssembly assemble_lp(const std::vector<Polynomial<Rational>>& s, const NormalizedConstraints& nc,
                       int order, bool dense) {
    KSAssembly out;
    out.n = s.empty() ? 0 : static_cast<int>(s.front().nvars());
    out.p = nc.p();
    out.m = static_cast<int>(s.size());
    out.order = order;
    out.dense = dense;

    int max_sdeg = 0;
    for (const auto& sj : s) max_sdeg = std::max<int>(max_sdeg, sj.total_degree());
    if (order < max_sdeg + 1) throw std::invalid_argument("relaxation order below deg(l')");

    const int n = out.n, p = out.p, m = out.m;

    if (!dense) {
        // block-local ring: x_1..x_n plus the block's own error variable
        std::vector<Polynomial<Rational>> gloc;
        for (const auto& g : nc.g) gloc.push_back(lift(g, n + 1, 0));
        Polynomial<Rational> emap(n + 1);
        emap.add_term(MultiIndex::zeros(n + 1), Rational(1, 2));
        emap.add_term(MultiIndex::unit(n + 1, n), Rational(1, 2));
        gloc.push_back(emap);
        PowerTable powers = build_powers(gloc, order);

        std::map<RowKey, int, RowKeyLess> row_ids;
        auto row_of = [&](const RowKey& k) {
            auto it = row_ids.find(k);
            if (it != row_ids.end()) return it->second;
            int id = static_cast<int>(row_ids.size());
            row_ids.emplace(k, id);
            return id;
        };

        // rows of l': every monomial x^gamma e_j
        std::vector<std::pair<int, Rational>> lvals;
        for (int j = 0; j < m; ++j)
            for (const auto& [mono, c] : s[j].terms())
                lvals.emplace_back(row_of(RowKey{mono, j, 1}), c);
        row_of(RowKey{MultiIndex::zeros(n), -1, 0});

        for (int j = 0; j < m; ++j) {
            for_each_pair(p + 1, order, [&](const MultiIndex& alpha, const MultiIndex& beta) {
                Polynomial<Rational> h = Polynomial<Rational>::constant(n + 1, Rational(1));
                for (int i = 0; i <= p; ++i) {
                    if (alpha[i]) h = h * powers.gpow[i][alpha[i]];
                    if (beta[i]) h = h * powers.hpow[i][beta[i]];
                }
                std::vector<std::pair<int, Rational>> col;
                for (const auto& [mono, c] : h.terms()) {
                    MultiIndex xpart(n);
                    for (int i = 0; i < n; ++i) xpart[i] = mono[i];
                    uint32_t ed = mono[n];
                    RowKey key{xpart, ed > 0 ? j : -1, ed};
                    col.emplace_back(row_of(key), c);
                }
                out.lambda_cols.push_back(std::move(col));
                out.meta.push_back({j, alpha, beta});
            });
        }

        // canonical row order
        std::vector<int> remap(row_ids.size());
        out.rows.resize(row_ids.size());
        int idx = 0;
        for (const auto& [key, old] : row_ids) {
            remap[old] = idx;
            out.rows[idx] = key;
            ++idx;
        }
        for (auto& col : out.lambda_cols) {
            for (auto& [r, c] : col) r = remap[r];
            std::sort(col.begin(), col.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
        }
        out.lprime.assign(out.rows.size(), Rational(0));
        for (auto& [r, c] : lvals) out.lprime[remap[r]] += c;
        for (std::size_t i = 0; i < out.rows.size(); ++i)
            if (out.rows[i].block == -1 && out.rows[i].x.is_zero()) out.zero_row = static_cast<int>(i);
    } else {
        // single-block relaxation over all of (x, e): the cross-check route
        const int nv = n + m;
        std::vector<Polynomial<Rational>> gall;
        for (const auto& g : nc.g) gall.push_back(lift(g, nv, 0));
        for (int j = 0; j < m; ++j) {
            Polynomial<Rational> emap(nv);
            emap.add_term(MultiIndex::zeros(nv), Rational(1, 2));
            emap.add_term(MultiIndex::unit(nv, n + j), Rational(1, 2));
            gall.push_back(std::move(emap));
        }
        PowerTable powers = build_powers(gall, order);

        std::map<MultiIndex, int, GradedLexLess> row_ids;
        auto row_of = [&](const MultiIndex& k) {
            auto it = row_ids.find(k);
            if (it != row_ids.end()) return it->second;
            int id = static_cast<int>(row_ids.size());
            row_ids.emplace(k, id);
            return id;
        };
        std::vector<std::pair<int, Rational>> lvals;
        for (int j = 0; j < m; ++j)
            for (const auto& [mono, c] : s[j].terms()) {
                MultiIndex full(nv);
                for (int i = 0; i < n; ++i) full[i] = mono[i];
                full[n + j] = 1;
                lvals.emplace_back(row_of(full), c);
            }
        row_of(MultiIndex::zeros(nv));

        const int total = p + m;
        for_each_pair(total, order, [&](const MultiIndex& alpha, const MultiIndex& beta) {
            Polynomial<Rational> h = Polynomial<Rational>::constant(nv, Rational(1));
            for (int i = 0; i < total; ++i) {
                if (alpha[i]) h = h * powers.gpow[i][alpha[i]];
                if (beta[i]) h = h * powers.hpow[i][beta[i]];
            }
            std::vector<std::pair<int, Rational>> col;
            for (const auto& [mono, c] : h.terms()) col.emplace_back(row_of(mono), c);
            out.lambda_cols.push_back(std::move(col));
            out.meta.push_back({0, alpha, beta});
        });

        std::vector<int> remap(row_ids.size());
        out.dense_rows.resize(row_ids.size());
        int idx = 0;
        for (const auto& [key, old] : row_ids) {
            remap[old] = idx;
            out.dense_rows[idx] = key;
            ++idx;
        }
        for (auto& col : out.lambda_cols) {
            for (auto& [r, c] : col) r = remap[r];
            std::sort(col.begin(), col.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
        }
        out.lprime.assign(out.dense_rows.size(), Rational(0));
        for (auto& [r, c] : lvals) out.lprime[remap[r]] += c;
        for (std::size_t i = 0; i < out.dense_rows.size(); ++i)
            if (out.dense_rows[i].is_zero()) out.zero_row = static_cast<int>(i);
    }
    return out;
}

StandardLP to_standard(const KSAssembly& asmb, BoundDirection dir) {
    StandardLP lp;
    lp.nrows = static_cast<int>(asmb.equations());
    const Rational tsign = dir == BoundDirection::Lower ? Rational(1) : Rational(-1);
    // columns: t+, t-, lambdas
    lp.cols.push_back({{asmb.zero_row, tsign}});
    lp.cols.push_back({{asmb.zero_row, -tsign}});
    for (const auto& col : asmb.lambda_cols) lp.cols.push_back(col);
    lp.b = asmb.lprime;
    if (dir == BoundDirection::Upper)
        for (auto& v : lp.b) v = -v;
    lp.c.assign(lp.cols.size(), Rational(0));
    // both directions maximize the certified quality of the bound:
    // lower: max t; upper: min t == max -t
    lp.c[0] = dir == BoundDirection::Lower ? Rational(1) : Rational(-1);
    lp.c[1] = -lp.c[0];
    return lp;
}

VerifiedBound verify_certificate(const KSCertificate& cert, const KSAssembly& asmb) {
    const std::size_t nrows = asmb.equations();
    std::vector<Rational> residual(nrows, Rational(0));
    // rho = (l' - t) - sum lambda h   (lower)   /   (t - l') - sum lambda h (upper)
    const bool lower = cert.direction == BoundDirection::Lower;
    for (std::size_t r = 0; r < nrows; ++r) residual[r] = lower ? asmb.lprime[r] : -asmb.lprime[r];
    residual[asmb.zero_row] -= lower ? cert.t : -cert.t;
    for (const auto& [col, lam] : cert.lambdas) {
        if (lam <= 0) continue;  // clamped: negative weights are dropped
        for (const auto& [r, c] : asmb.lambda_cols[col]) residual[r] -= lam * c;
    }
    Rational l1(0);
    for (const auto& v : residual) l1 += rational_abs(v);

    VerifiedBound vb;
    vb.t_raw = cert.t;
    vb.residual_l1 = l1;
    vb.exact = (l1 == 0);
    // every monomial over [0,1]^n x [-1,1]^m has magnitude at most 1, so the
    // residual costs at most its own l1 norm
    vb.t_certified = lower ? Rational(cert.t - l1) : Rational(cert.t + l1);
    return vb;
}

KSBound ks_bound(const KSAssembly& asmb, BoundDirection dir, LPBackend backend,
                 const SolveLimits& limits) {
    KSBound out;
    StandardLP lp = to_standard(asmb, dir);
    bool use_exact;
    switch (backend) {
        case LPBackend::Exact: use_exact = true; break;
        case LPBackend::Float: use_exact = false; break;
        default: use_exact = lp.ncols() <= 600 && lp.nrows <= 120; break;
    }
    SolveResult sr = use_exact ? solve_lp_exact(lp, limits) : solve_lp_float(lp, limits);
    out.status = sr.status;
    out.iterations = sr.iterations;
    out.solved_exactly = sr.exact;
    if (!sr.optimal()) return out;

    KSCertificate cert;
    cert.direction = dir;
    if (sr.exact) {
        cert.t = sr.x_exact[0] - sr.x_exact[1];
        for (std::size_t j = 2; j < sr.x_exact.size(); ++j)
            if (sr.x_exact[j] != 0) cert.lambdas.emplace_back(static_cast<int>(j - 2), sr.x_exact[j]);
    } else {
        cert.t = rational_from_double_exact(sr.x[0]) - rational_from_double_exact(sr.x[1]);
        for (std::size_t j = 2; j < sr.x.size(); ++j)
            if (sr.x[j] > 0) cert.lambdas.emplace_back(static_cast<int>(j - 2), rational_from_double_exact(sr.x[j]));
    }
    out.verification = verify_certificate(cert, asmb);
    out.certificate = std::move(cert);
    out.value = out.verification.t_certified;
    return out;
}

KSOutcome fpkristen_run(const ErrorForm& ef, const FpKriStenOptions& opt) {
    const Program& prog = ef.program();
    if (!prog.body_is_polynomial()) throw RationalBodyUnsupported();

    KSOutcome out;
    out.h = bound_remainder<Rational>(ef);
    if (ef.m() == 0) {
        // nothing rounds: the error is exactly the remainder enclosure
        out.total_interval = out.h;
        out.total = out.h.mag();
        out.exact_lp = true;
        out.residual_l1 = 0;
        out.lower = out.upper = 0;
        return out;
    }

    std::vector<Polynomial<Rational>> s;
    s.reserve(ef.s.size());
    for (const auto& rf : scaled_error_coefficients(ef)) s.push_back(rf.as_polynomial());

    Polynomial<Rational> body = dag_to_polynomial(prog.dag, prog.root, prog.nvars());
    int max_sdeg = 0;
    for (const auto& sj : s) max_sdeg = std::max<int>(max_sdeg, sj.total_degree());
    int order = opt.order.value_or(std::max<int>(body.total_degree() + 1, max_sdeg + 1));

    NormalizedConstraints nc = normalize_constraints(prog);
    KSAssembly asmb = assemble_lp(s, nc, order);
    out.order = order;
    out.lp_variables = asmb.variables();
    out.lp_equations = asmb.equations();

    // the two directions share the immutable assembly and run concurrently
    auto lo_future = std::async(std::launch::async, [&] {
        return ks_bound(asmb, BoundDirection::Lower, opt.backend, opt.limits);
    });
    KSBound hi = ks_bound(asmb, BoundDirection::Upper, opt.backend, opt.limits);
    KSBound lo = lo_future.get();
    out.iterations = lo.iterations + hi.iterations;
    if (lo.status != SolveStatus::Optimal || hi.status != SolveStatus::Optimal) {
        out.status = lo.status != SolveStatus::Optimal ? lo.status : hi.status;
        return out;
    }
    out.status = SolveStatus::Optimal;
    out.lower = lo.value;
    out.upper = hi.value;
    out.exact_lp = lo.verification.exact && hi.verification.exact && lo.solved_exactly && hi.solved_exactly;
    out.residual_l1 = std::max(lo.verification.residual_l1, hi.verification.residual_l1);
    out.linear_interval = RatInterval(ef.eps * out.lower, ef.eps * out.upper);
    out.total_interval = out.linear_interval + out.h;
    out.total = out.total_interval.mag();
    return out;
}

std::string write_lp_text(const KSAssembly& asmb, BoundDirection dir) {
    StandardLP lp = to_standard(asmb, dir);
    std::ostringstream os;
    os << "\\ krivine-stengle relaxation, " << (dir == BoundDirection::Lower ? "lower" : "upper")
       << " direction, order " << asmb.order << "\n";
    os << "Maximize\n obj:" << (dir == BoundDirection::Lower ? " t" : " - t") << "\n";
    os << "Subject To\n";
    // rebuild rows as named equations; t appears un-split
    const std::size_t nrows = asmb.equations();
    std::vector<std::vector<std::pair<std::string, Rational>>> rows(nrows);
    const Rational tsign = dir == BoundDirection::Lower ? Rational(1) : Rational(-1);
    rows[asmb.zero_row].emplace_back("t", tsign);
    for (std::size_t j = 0; j < asmb.lambda_cols.size(); ++j)
        for (const auto& [r, c] : asmb.lambda_cols[j]) rows[r].emplace_back("l" + std::to_string(j), c);
    for (std::size_t r = 0; r < nrows; ++r) {
        os << " r" << r << ":";
        for (const auto& [name, c] : rows[r]) {
            if (c >= 0) os << " + " << rational_to_decimal_string(c) << " " << name;
            else os << " - " << rational_to_decimal_string(-c) << " " << name;
        }
        os << " = " << rational_to_decimal_string(lp.b[r]) << "\n";
    }
    os << "Bounds\n t free\nEnd\n";
    return os.str();
}

StandardLP parse_lp_text(const std::string& text, std::vector<std::string>* names_out) {
    std::istringstream is(text);
    std::string line;
    StandardLP lp;
    std::map<std::string, int> name_ids;
    std::vector<std::string> names;
    std::vector<std::string> free_vars;
    std::map<std::string, Rational> objective;
    std::vector<std::map<std::string, Rational>> rows;
    std::vector<Rational> rhs;
    bool obj_negated = false;

    enum class Sec { None, Objective, Rows, Bounds } sec = Sec::None;
    auto var_id = [&](const std::string& nm) {
        auto it = name_ids.find(nm);
        if (it != name_ids.end()) return it->second;
        int id = static_cast<int>(names.size());
        name_ids.emplace(nm, id);
        names.push_back(nm);
        return id;
    };

    auto parse_terms = [&](const std::string& body, std::map<std::string, Rational>& into) {
        std::istringstream ts(body);
        std::string tok;
        Rational sign(1);
        std::optional<Rational> coef;
        while (ts >> tok) {
            if (tok == "+") { sign = 1; continue; }
            if (tok == "-") { sign = -1; continue; }
            if ((tok[0] >= '0' && tok[0] <= '9') || tok[0] == '.') {
                coef = rational_from_decimal(tok) * sign;
                continue;
            }
            Rational c = coef.value_or(sign);
            into[tok] += c;
            var_id(tok);
            sign = 1;
            coef.reset();
        }
    };

    while (std::getline(is, line)) {
        auto cut = line.find('\\');
        if (cut != std::string::npos) line = line.substr(0, cut);
        std::string trimmed;
        for (char c : line)
            if (!trimmed.empty() || !isspace(static_cast<unsigned char>(c))) trimmed.push_back(c);
        while (!trimmed.empty() && isspace(static_cast<unsigned char>(trimmed.back()))) trimmed.pop_back();
        if (trimmed.empty()) continue;
        std::string lower;
        for (char c : trimmed) lower.push_back(static_cast<char>(tolower(c)));
        if (lower == "maximize") { sec = Sec::Objective; obj_negated = false; continue; }
        if (lower == "minimize") { sec = Sec::Objective; obj_negated = true; continue; }
        if (lower == "subject to" || lower == "st" || lower == "s.t.") { sec = Sec::Rows; continue; }
        if (lower == "bounds") { sec = Sec::Bounds; continue; }
        if (lower == "end") break;

        if (sec == Sec::Objective) {
            auto colon = trimmed.find(':');
            std::string body = colon == std::string::npos ? trimmed : trimmed.substr(colon + 1);
            parse_terms(body, objective);
        } else if (sec == Sec::Rows) {
            auto colon = trimmed.find(':');
            std::string body = colon == std::string::npos ? trimmed : trimmed.substr(colon + 1);
            auto eq = body.rfind('=');
            if (eq == std::string::npos) continue;
            std::string lhs = body.substr(0, eq);
            std::string rv = body.substr(eq + 1);
            rows.emplace_back();
            parse_terms(lhs, rows.back());
            std::string cleaned;
            for (char c : rv)
                if (!isspace(static_cast<unsigned char>(c))) cleaned.push_back(c);
            rhs.push_back(rational_from_decimal(cleaned));
        } else if (sec == Sec::Bounds) {
            std::istringstream bs(trimmed);
            std::string nm, kind;
            bs >> nm >> kind;
            if (kind == "free") free_vars.push_back(nm);
        }
    }

    // split free variables into a difference of nonnegatives
    std::map<std::string, std::pair<int, int>> split;  // name -> (plus col, minus col)
    int ncols = 0;
    std::vector<std::string> col_names;
    for (const auto& nm : names) {
        if (std::find(free_vars.begin(), free_vars.end(), nm) != free_vars.end()) {
            split[nm] = {ncols, ncols + 1};
            col_names.push_back(nm + "+");
            col_names.push_back(nm + "-");
            ncols += 2;
        } else {
            split[nm] = {ncols, -1};
            col_names.push_back(nm);
            ncols += 1;
        }
    }
    lp.cols.assign(ncols, {});
    lp.c.assign(ncols, Rational(0));
    lp.nrows = static_cast<int>(rows.size());
    lp.b = rhs;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (const auto& [nm, c] : rows[r]) {
            auto [plus, minus] = split[nm];
            lp.cols[plus].emplace_back(static_cast<int>(r), c);
            if (minus >= 0) lp.cols[minus].emplace_back(static_cast<int>(r), -c);
        }
    }
    for (const auto& [nm, c] : objective) {
        Rational cc = obj_negated ? -c : c;
        auto [plus, minus] = split[nm];
        lp.c[plus] += cc;
        if (minus >= 0) lp.c[minus] -= cc;
    }
    if (names_out) *names_out = col_names;
    return lp;
}

}  // namespace fpcert
