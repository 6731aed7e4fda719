// Acceptance suite: one line per criterion, PASS/FAIL each, exit nonzero on
// any failure. Criteria marked "tighter-sound" report bounds that land below
// their stored reference band while passing the in-run soundness sampler;
// they are still counted as failures of the reproduction band.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "fpcert/benchmarks.hpp"
#include "fpcert/bernstein.hpp"
#include "fpcert/krivine.hpp"
#include "fpcert/report.hpp"

using namespace fpcert;

namespace {

int failures = 0;
std::mt19937 rng(20260808u);

void line(bool pass, const std::string& label, const std::string& detail) {
    std::printf("%s  %-34s %s\n", pass ? "PASS" : "FAIL", label.c_str(), detail.c_str());
    if (!pass) ++failures;
}

double wall(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Rational ref_value(const std::string& printed) {
    // printed values look like 5.33e-13
    return rational_from_decimal(printed);
}

// uniform rational sample in [0,1]
Rational usample(int den = 4096) {
    std::uniform_int_distribution<int> d(0, den);
    return frac(d(rng), den);
}

// |l'(x, corner e)| <= lbar sampling oracle (float backend, slack for the
// widening; corner e maximizes each term's magnitude)
bool sampled_soundness(const ErrorForm& ef, const Rational& lbar, int samples) {
    std::vector<Polynomial<double>> nums;
    std::vector<Polynomial<double>> dens;
    for (const auto& rf : scaled_error_coefficients(ef)) {
        nums.push_back(widen(rf.num()));
        dens.push_back(widen(rf.den()));
    }
    double bound = to_double_nearest(lbar) * (1.0 + 1e-9) + 1e-300;
    std::uniform_real_distribution<double> un(0.0, 1.0);
    for (int t = 0; t < samples; ++t) {
        std::vector<double> y;
        for (std::size_t i = 0; i < ef.nvars(); ++i) y.push_back(un(rng));
        double acc = 0.0;
        for (int j = 0; j < ef.m(); ++j) {
            double d = dens[j].eval(y);
            if (d == 0.0) return false;
            acc += std::abs(nums[j].eval(y) / d);
        }
        if (acc > bound) return false;
    }
    return true;
}

struct EngineRun {
    bool ok = false;
    Rational total;
    Rational linear_over_eps;
    std::string note;
};

EngineRun run_bern(const ErrorForm& ef) {
    EngineRun r;
    BernOutcome<Rational> out = fpbern_run<Rational>(ef);
    if (!out.finite) {
        r.note = "infinite bound";
        return r;
    }
    r.ok = true;
    r.total = out.total;
    r.linear_over_eps = out.linear_bound;
    return r;
}

EngineRun run_ks(const ErrorForm& ef, LPBackend backend = LPBackend::Auto) {
    EngineRun r;
    FpKriStenOptions opt;
    opt.backend = backend;
    KSOutcome out = fpkristen_run(ef, opt);
    if (out.status != SolveStatus::Optimal) {
        r.note = to_string(out.status);
        return r;
    }
    r.ok = true;
    r.total = out.total;
    r.linear_over_eps = std::max(rational_abs(out.lower), rational_abs(out.upper));
    return r;
}

ErrorForm form_of(const std::string& name) {
    const auto* c = find_benchmark(name);
    return make_error_form(parse_program(c->source), default_machine_eps());
}

std::string ratio_str(const Rational& total, const Rational& ref) {
    double r = to_double_nearest(total / ref);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", r);
    return buf;
}

void criterion_1() {
    auto t0 = std::chrono::steady_clock::now();
    ErrorForm ef = form_of("overview");
    Rational two_eps = 2 * default_machine_eps();

    BernOutcome<Rational> bern = fpbern_run<Rational>(ef);
    bool bern_ok = bern.finite && ef.eps * bern.linear_bound == two_eps &&
                   bern.k_used == MultiIndex{2};

    FpKriStenOptions opt;
    opt.backend = LPBackend::Exact;
    KSOutcome ks = fpkristen_run(ef, opt);
    bool ks_ok = ks.status == SolveStatus::Optimal && ks.order == 3 && ks.exact_lp &&
                 ks.lower == -2 && ks.upper == 2;

    double secs = wall(t0);
    line(bern_ok && ks_ok && secs < 1.0, "1 overview linear bound = 2eps",
         "bern k=(2) " + std::string(bern_ok ? "exact" : "WRONG") + ", ks k=3 " +
             (ks_ok ? "exact" : "WRONG") + ", " + std::to_string(secs) + "s");
}

void criterion_2() {
    Polynomial<Rational> s1(1), s2(1), s3(1);
    s1.add_term(MultiIndex{2}, Rational(2));
    s1.add_term(MultiIndex{1}, Rational(-1));
    s2.add_term(MultiIndex{2}, Rational(1));
    s3.add_term(MultiIndex{2}, Rational(1));
    s3.add_term(MultiIndex{1}, Rational(-1));
    auto e1 = bernstein_coeffs(s1, MultiIndex{2});
    auto e2 = bernstein_coeffs(s2, MultiIndex{2});
    auto e3 = bernstein_coeffs(s3, MultiIndex{2});
    Rational sums[3];
    for (int i = 0; i < 3; ++i)
        sums[i] = rational_abs(e1.coeffs[i]) + rational_abs(e2.coeffs[i]) + rational_abs(e3.coeffs[i]);
    bool ok = sums[0] == 0 && sums[1] == 1 && sums[2] == 2;
    line(ok, "2 coefficient sums (0, 1, 2)",
         rational_to_string(sums[0]) + ", " + rational_to_string(sums[1]) + ", " +
             rational_to_string(sums[2]));
}

void criterion_3() {
    ErrorForm ef = form_of("overview");
    std::vector<Polynomial<Rational>> s;
    for (const auto& rf : scaled_error_coefficients(ef)) s.push_back(rf.as_polynomial());
    NormalizedConstraints nc = normalize_constraints(ef.program());
    KSAssembly sparse = assemble_lp(s, nc, 3);
    KSAssembly dense = assemble_lp(s, nc, 3, true);
    bool dims_ok = sparse.variables() == 106 && sparse.equations() == 22 &&
                   dense.variables() == 166 && dense.equations() == 35;
    line(dims_ok, "3a overview LP dimensions",
         "sparse " + std::to_string(sparse.variables()) + "/" + std::to_string(sparse.equations()) +
             ", dense " + std::to_string(dense.variables()) + "/" + std::to_string(dense.equations()));

    // Remark-2 closed forms on every box-constrained benchmark
    bool all_ok = true;
    std::string first_bad;
    for (const auto& c : benchmark_corpus()) {
        if (!c.ks || !c.bern) continue;  // box-constrained polynomial cases only
        Program p = parse_program(c.source);
        if (!p.constraints.empty()) continue;
        ErrorForm e = make_error_form(p, default_machine_eps());
        std::vector<Polynomial<Rational>> sj;
        int sdeg = 0;
        for (const auto& rf : scaled_error_coefficients(e)) {
            sj.push_back(rf.as_polynomial());
            sdeg = std::max<int>(sdeg, sj.back().total_degree());
        }
        int body_deg = dag_to_polynomial(p.dag, p.root, p.nvars()).total_degree();
        int k = std::max(body_deg + 1, sdeg + 1);
        KSAssembly a = assemble_lp(sj, normalize_constraints(p), k);
        int n = static_cast<int>(p.nvars());
        int pp = n;  // box only: coordinates
        Integer vars_expected = Integer(e.m()) * binomial(2 * (pp + 1) + k, k) + 1;
        Integer rows_expected =
            Integer(e.m()) * binomial(n + 1 + k, k) - Integer(e.m() - 1) * binomial(n + k, k);
        if (Integer(static_cast<long>(a.variables())) != vars_expected ||
            Integer(static_cast<long>(a.equations())) != rows_expected) {
            all_ok = false;
            if (first_bad.empty()) first_bad = c.name;
        }
    }
    line(all_ok, "3b Remark-2 closed forms (box cases)",
         all_ok ? "variables and equations match on every box benchmark"
                : "first mismatch: " + first_bad);
}

void table_row(const std::string& name, const char* which, double lo, double hi) {
    const auto* c = find_benchmark(name);
    ErrorForm ef = form_of(name);
    Rational ref = ref_value(which == std::string("bern") ? c->ref_bern : c->ref_ks);
    EngineRun run = which == std::string("bern") ? run_bern(ef) : run_ks(ef);
    if (!run.ok) {
        line(false, "   " + name + " (" + which + ")", "engine failed: " + run.note);
        return;
    }
    Rational ratio = run.total / ref;
    bool in_band = ratio >= rational_from_double_exact(lo) && ratio <= rational_from_double_exact(hi);
    std::string detail = "total " + rational_to_decimal_string(run.total, 3) + " vs " +
                         (which == std::string("bern") ? c->ref_bern : c->ref_ks) + ", ratio " +
                         ratio_str(run.total, ref);
    if (!in_band && ratio < 1) {
        // tighter than the stored reference: verify soundness by sampling
        bool sound = sampled_soundness(ef, run.linear_over_eps, 10000);
        detail += sound ? " (tighter than reference, sampled-sound)" : " (UNSOUND!)";
    }
    line(in_band, "   " + name + " (" + which + ")", detail);
}

void criterion_4() {
    std::printf("--- 4 Table-1 box/polynomial rows, both engines, band [0.90, 1.10]\n");
    auto t0 = std::chrono::steady_clock::now();
    const char* rows[] = {"rigidBody1", "rigidBody2", "kepler0", "kepler1", "kepler2",
                          "sineTaylor", "sqroot",     "schwefel", "caprasse"};
    for (const char* name : rows) {
        table_row(name, "bern", 0.90, 1.10);
        table_row(name, "ks", 0.90, 1.10);
    }
    double secs = wall(t0);
    line(secs < 600.0, "4  total runtime < 10 min", std::to_string(secs) + "s");
}

void criterion_5() {
    std::printf("--- 5 Table-1 rational rows, bern, band [0.85, 1.20]\n");
    for (const char* name : {"doppler1", "verhulst", "turbine2"}) table_row(name, "bern", 0.85, 1.20);
}

void criterion_6() {
    std::printf("--- 6 Table-1 semialgebraic rows, ks, band [0.80, 1.25] (floudas2-6 skipped)\n");
    for (const char* name : {"floudas3-4", "floudas4-6"}) table_row(name, "ks", 0.80, 1.25);
}

void criterion_7() {
    bool all_ok = true;
    std::string worst;
    double worst_rel = 0.0;
    for (const auto& c : benchmark_corpus()) {
        if (!c.bern || c.heavy) continue;
        ErrorForm ef = form_of(c.name);
        BernOutcome<Rational> exact = fpbern_run<Rational>(ef);
        BernOutcome<double> fl = fpbern_run<double>(ef);
        if (!exact.finite || !fl.finite) {
            // both backends reporting an unbounded enclosure is agreement
            if (exact.finite != fl.finite) {
                all_ok = false;
                worst = c.name + " finite/infinite mismatch";
            }
            continue;
        }
        double e = to_double_nearest(exact.total);
        double rel = std::abs(fl.total - e) / (e == 0 ? 1.0 : e);
        if (rel > worst_rel) {
            worst_rel = rel;
            worst = c.name;
        }
        if (rel > 1e-9) all_ok = false;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2e", worst_rel);
    line(all_ok, "7 backend agreement <= 1e-9", "worst relative gap " + std::string(buf) + " (" + worst + ")");
}

void criterion_8() {
    std::printf("--- 8 property suites\n");
    std::uniform_int_distribution<int> coef(-10, 10), ed(0, 3), sign(0, 1);

    // expansion identity + enclosure soundness + linearity + nesting + sharpness
    bool identity_ok = true, enclosure_ok = true, linear_ok = true, nest_ok = true, sharp_ok = true;
    for (int trial = 0; trial < 60; ++trial) {
        Polynomial<Rational> p(2), q(2);
        for (int t = 0; t < 5; ++t) {
            MultiIndex mi(2);
            mi[0] = ed(rng);
            mi[1] = ed(rng);
            p.add_term(mi, Rational(coef(rng)));
            mi[0] = ed(rng);
            mi[1] = ed(rng);
            q.add_term(mi, Rational(coef(rng)));
        }
        MultiIndex k = MultiIndex::max(p.multi_degree(), q.multi_degree());
        auto ep = bernstein_coeffs(p, k);
        // identity at random rational points through the plain basis
        for (int pt = 0; pt < 4 && identity_ok; ++pt) {
            std::vector<Rational> x{usample(32), usample(32)};
            Rational acc(0);
            MultiIndex alpha(2);
            for (std::size_t idx = 0; idx < ep.coeffs.size(); ++idx) {
                Rational b(1);
                for (int i = 0; i < 2; ++i)
                    b *= Rational(binomial(k[i], alpha[i])) * rational_pow(x[i], alpha[i]) *
                         rational_pow(Rational(1) - x[i], k[i] - alpha[i]);
                acc += ep.coeffs[idx] * b;
                std::size_t i = 2;
                while (i-- > 0) {
                    if (alpha[i] < k[i]) {
                        ++alpha[i];
                        for (std::size_t j2 = i + 1; j2 < 2; ++j2) alpha[j2] = 0;
                        break;
                    }
                }
            }
            if (acc != p.eval(x)) identity_ok = false;
        }
        auto bp = enclosure(ep);
        for (int pt = 0; pt < 40; ++pt) {
            std::vector<Rational> x{usample(64), usample(64)};
            Rational v = p.eval(x);
            if (v < bp.lower || v > bp.upper) enclosure_ok = false;
        }
        // Property-2 linearity
        Rational cc(3, 1);
        auto comb = bernstein_coeffs(p.scaled(cc) + q, k);
        auto eq = bernstein_coeffs(q, k);
        for (std::size_t i = 0; i < comb.coeffs.size(); ++i)
            if (comb.coeffs[i] != cc * ep.coeffs[i] + eq.coeffs[i]) linear_ok = false;
        // nesting
        MultiIndex k2 = k;
        k2[0] += 1;
        k2[1] += 1;
        auto b2 = enclosure(bernstein_coeffs(p, k2));
        if (b2.lower < bp.lower || b2.upper > bp.upper) nest_ok = false;
        // sharpness implies exact vertex value
        if (bp.sharp_upper) {
            Rational best = p.eval({Rational(0), Rational(0)});
            for (int cx = 0; cx <= 1; ++cx)
                for (int cy = 0; cy <= 1; ++cy)
                    best = std::max(best, p.eval({Rational(cx), Rational(cy)}));
            if (bp.upper != best) sharp_ok = false;
        }
    }
    line(identity_ok, "   expansion identity", "exact at sampled rational points");
    line(enclosure_ok, "   enclosure soundness", "sampled containment");
    line(linear_ok, "   Property-2 linearity", "coefficientwise, exact");
    line(nest_ok, "   elevation nesting", "enclosures shrink with k");
    line(sharp_ok, "   Property-4 sharpness", "sharp flags hit exact vertex extrema");

    // Proposition-1 soundness on the bundled polynomial benchmarks
    bool prop1_ok = true;
    for (const auto& c : benchmark_corpus()) {
        if (!c.ks || !c.bern || c.heavy || c.n > 4) continue;
        ErrorForm ef = form_of(c.name);
        BernOutcome<Rational> out = fpbern_run<Rational>(ef);
        if (!out.finite || !sampled_soundness(ef, out.linear_bound, 10000)) prop1_ok = false;
    }
    line(prop1_ok, "   Proposition-1 soundness", "sampled |l'| <= bound on bundled benchmarks");

    // KS monotonicity on a small suite
    bool mono_ok = true;
    {
        Program p = parse_program("vars: x in [0,1]; y in [0,1] expr: x*y - y");
        ErrorForm ef = make_error_form(p, default_machine_eps());
        std::vector<Polynomial<Rational>> s;
        for (const auto& rf : scaled_error_coefficients(ef)) s.push_back(rf.as_polynomial());
        NormalizedConstraints nc = normalize_constraints(p);
        Rational prev_lo, prev_hi;
        for (int k = 3; k <= 5; ++k) {
            KSAssembly a = assemble_lp(s, nc, k);
            KSBound lo = ks_bound(a, BoundDirection::Lower, LPBackend::Exact);
            KSBound hi = ks_bound(a, BoundDirection::Upper, LPBackend::Exact);
            if (lo.status != SolveStatus::Optimal || hi.status != SolveStatus::Optimal) mono_ok = false;
            if (k > 3 && (lo.value < prev_lo || hi.value > prev_hi)) mono_ok = false;
            prev_lo = lo.value;
            prev_hi = hi.value;
        }
    }
    line(mono_ok, "   KS monotonicity in k", "lower nondecreasing, upper nonincreasing");

    // exact-path certificates have zero residual; float-path repairs are sound
    bool cert_ok = true;
    {
        ErrorForm ef = form_of("overview");
        std::vector<Polynomial<Rational>> s;
        for (const auto& rf : scaled_error_coefficients(ef)) s.push_back(rf.as_polynomial());
        KSAssembly a = assemble_lp(s, normalize_constraints(ef.program()), 3);
        KSBound lo = ks_bound(a, BoundDirection::Lower, LPBackend::Exact);
        if (!lo.verification.exact || lo.verification.residual_l1 != 0) cert_ok = false;
        KSBound flo = ks_bound(a, BoundDirection::Lower, LPBackend::Float);
        if (flo.status != SolveStatus::Optimal) cert_ok = false;
        // repaired bound below the true minimum -2 up to the residual paid
        if (flo.value > -2 + frac(1, 1000000)) cert_ok = false;
        if (!sampled_soundness(ef, -flo.value > 2 ? Rational(-flo.value) : Rational(2), 2000)) cert_ok = false;
    }
    line(cert_ok, "   certificates", "exact path residual 0; float path repaired and sound");
}

void criterion_9() {
    Polynomial<Rational> x2(1);
    x2.add_term(MultiIndex{2}, Rational(1));
    Rational at2 = convergence_bound({x2}, 2);
    Rational at4 = convergence_bound({x2}, 4);
    // direct formula evaluation: L(x^2) = 2!/2! = 1, C(3,3) = 1, n^d = 1,
    // so the k = 2 value is 3/2 and it halves when k doubles
    bool ok = at2 == Rational(3, 2) && at4 == at2 / 2;
    line(ok, "9 convergence-rate diagnostic",
         "value(k=2) = " + rational_to_string(at2) + ", halves at k=4");
}

}  // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();
    std::printf("acceptance suite (eps = 2^-53)\n");
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    std::printf("%s: %d failing check(s), %.1fs total\n", failures == 0 ? "ACCEPTED" : "REJECTED",
                failures, wall(t0));
    return failures == 0 ? 0 : 1;
}
