#include <random>

#include "doctest.h"
#include "fpcert/bernstein.hpp"
#include "fpcert/krivine.hpp"

using namespace fpcert;

namespace {

std::mt19937& rng() {
    static std::mt19937 gen(5150u);
    return gen;
}

const char* kOverview = "name: overview vars: x in [0,1] expr: x*x - x";

ErrorForm overview_form() {
    return make_error_form(parse_program(kOverview), default_machine_eps());
}

}  // namespace

TEST_CASE("error box constraint maps") {
    auto maps = build_error_box_constraints(3);
    REQUIRE(maps.size() == 3);
    for (int j = 0; j < 3; ++j) {
        std::vector<Rational> at_lo(3, Rational(0)), at_hi(3, Rational(0));
        at_lo[j] = Rational(-1);
        at_hi[j] = Rational(1);
        CHECK(maps[j].eval(at_lo) == 0);
        CHECK(maps[j].eval(at_hi) == 1);
    }
    auto one = build_error_box_constraints(1);
    CHECK(one[0].coefficient(MultiIndex{0}) == Rational(1, 2));
    CHECK(one[0].coefficient(MultiIndex{1}) == Rational(1, 2));
}

TEST_CASE("sparsity pattern satisfies the running intersection property") {
    SparsityPattern sp = make_sparsity_pattern(4, 6, 9);
    CHECK(sp.running_intersection_holds());
    CHECK(sp.var_block(2) == std::vector<int>{0, 1, 2, 3, 6});
    CHECK(sp.constraint_block(0) == std::vector<int>{0, 1, 2, 3, 4, 5, 6});
}

TEST_CASE("box-only normalization appends the coordinates") {
    Program p = parse_program("vars: x1 in [0,1]; x2 in [0,1] expr: x1*x2");
    NormalizedConstraints nc = normalize_constraints(p);
    CHECK(nc.p() == 2);
    CHECK(nc.user_count == 0);
    CHECK(nc.g[0] == Polynomial<Rational>::variable(2, 0));
    CHECK(nc.g[1] == Polynomial<Rational>::variable(2, 1));
}

TEST_CASE("semialgebraic normalization divides by an interval upper bound") {
    Program p = parse_program(
        "name: f46 vars: x1 in [0,3]; x2 in [0,4] "
        "constraints: 0 <= 2.0*x1^4 - 8.0*x1^3 + 8.0*x1*x1 - x2 "
        "expr: -x1 - x2");
    NormalizedConstraints nc = normalize_constraints(p);
    REQUIRE(nc.p() == 3);  // one user constraint + two coordinates
    REQUIRE(nc.scale_log.size() == 1);
    CHECK(nc.scale_log[0] > 0);
    // soundness of the normalization: 0 <= g/U on samples where g >= 0, and
    // g/U <= 1 everywhere on the unit box
    std::uniform_real_distribution<double> un(0.0, 1.0);
    Polynomial<double> gd = widen(nc.g[0]);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> y{un(rng()), un(rng())};
        CHECK(gd.eval(y) <= 1.0 + 1e-9);
    }
}

TEST_CASE("overview LP dimensions match Example 2") {
    ErrorForm ef = overview_form();
    std::vector<Polynomial<Rational>> s;
    for (const auto& rf : scaled_error_coefficients(ef)) s.push_back(rf.as_polynomial());
    NormalizedConstraints nc = normalize_constraints(ef.program());

    KSAssembly sparse = assemble_lp(s, nc, 3);
    CHECK(sparse.variables() == 106);
    CHECK(sparse.equations() == 22);

    KSAssembly dense = assemble_lp(s, nc, 3, /*dense=*/true);
    CHECK(dense.variables() == 166);
    CHECK(dense.equations() == 35);
}

TEST_CASE("sparse LP dimensions match the closed forms on box programs") {
    // variables: m C(2(p+1)+k, k) + 1; equations: [m khat/(n+1) + 1] C(n+khat, khat)
    struct Case {
        const char* src;
        int expect_m;
    };
    const Case cases[] = {
        {"name: rb1 vars: x1 in [-15,15]; x2 in [-15,15]; x3 in [-15,15] "
         "expr: -x1*x2 - 2.0*x2*x3 - x1 - x3",
         10},
        {"vars: x in [0,1]; y in [0,1] expr: x*y - x", 4},
    };
    for (const auto& c : cases) {
        Program p = parse_program(c.src);
        ErrorForm ef = make_error_form(p, default_machine_eps());
        REQUIRE(ef.m() == c.expect_m);
        std::vector<Polynomial<Rational>> s;
        for (const auto& rf : scaled_error_coefficients(ef)) s.push_back(rf.as_polynomial());
        NormalizedConstraints nc = normalize_constraints(p);
        int n = static_cast<int>(p.nvars());
        int body_deg = dag_to_polynomial(p.dag, p.root, p.nvars()).total_degree();
        int k = body_deg + 1;
        KSAssembly a = assemble_lp(s, nc, k);
        Integer vars_expected = Integer(ef.m()) * binomial(2 * (nc.p() + 1) + k, k) + 1;
        Integer rows_expected =
            Integer(ef.m()) * binomial(n + 1 + k, k) - Integer(ef.m() - 1) * binomial(n + k, k);
        CHECK(Integer(static_cast<long>(a.variables())) == vars_expected);
        CHECK(Integer(static_cast<long>(a.equations())) == rows_expected);
    }
}

TEST_CASE("ks_bound on the overview program attains 2 exactly") {
    ErrorForm ef = overview_form();
    std::vector<Polynomial<Rational>> s;
    for (const auto& rf : scaled_error_coefficients(ef)) s.push_back(rf.as_polynomial());
    NormalizedConstraints nc = normalize_constraints(ef.program());
    KSAssembly a = assemble_lp(s, nc, 3);

    KSBound lo = ks_bound(a, BoundDirection::Lower, LPBackend::Exact);
    KSBound hi = ks_bound(a, BoundDirection::Upper, LPBackend::Exact);
    REQUIRE(lo.status == SolveStatus::Optimal);
    REQUIRE(hi.status == SolveStatus::Optimal);
    CHECK(lo.value == -2);
    CHECK(hi.value == 2);
    // exact LP path: certificate residual is exactly zero
    CHECK(lo.verification.exact);
    CHECK(hi.verification.exact);

    // the dense cross-check yields valid bounds too, at least as loose on the
    // lower side as the sparse value is sound
    KSAssembly d = assemble_lp(s, nc, 3, true);
    KSBound dlo = ks_bound(d, BoundDirection::Lower, LPBackend::Exact);
    REQUIRE(dlo.status == SolveStatus::Optimal);
    CHECK(dlo.value >= lo.value);
    CHECK(dlo.value <= -2);  // true min of l' is -2, the bound must stay below
}

TEST_CASE("constant l' is bounded exactly at any order") {
    Program p = parse_program("vars: x in [0,1] expr: 0.5");
    // body is a representable constant: no error variables at all
    ErrorForm ef = make_error_form(p, default_machine_eps());
    CHECK(ef.m() == 0);
    KSOutcome out = fpkristen_run(ef);
    CHECK(out.status == SolveStatus::Optimal);
    CHECK(out.total == 0);
}

TEST_CASE("l' = x e1: certified range is [-1, 1]") {
    Program p = parse_program("vars: x in [0,1] expr: x");
    ErrorForm ef = make_error_form(p, default_machine_eps());
    REQUIRE(ef.m() == 1);
    std::vector<Polynomial<Rational>> s{ef.s[0].as_polynomial()};
    NormalizedConstraints nc = normalize_constraints(p);
    KSAssembly a = assemble_lp(s, nc, 2);
    KSBound lo = ks_bound(a, BoundDirection::Lower, LPBackend::Exact);
    KSBound hi = ks_bound(a, BoundDirection::Upper, LPBackend::Exact);
    // brute force over corners: x in {0,1}, e in {-1,1} gives range [-1, 1]
    CHECK(lo.value == -1);
    CHECK(hi.value == 1);
}

TEST_CASE("certified bounds are sound under sampling") {
    Program p = parse_program("vars: x in [0,1]; y in [0,1] expr: x*y - y");
    ErrorForm ef = make_error_form(p, default_machine_eps());
    KSOutcome out = fpkristen_run(ef);
    REQUIRE(out.status == SolveStatus::Optimal);
    auto scaled = scaled_error_coefficients(ef);
    std::uniform_int_distribution<int> num(0, 16), sgn(0, 1);
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<Rational> y{frac(num(rng()), 16), frac(num(rng()), 16)};
        Rational lp(0);
        for (int j = 0; j < ef.m(); ++j) {
            Rational e = sgn(rng()) ? Rational(1) : Rational(-1);
            lp += scaled[j].eval(y) * e;
        }
        CHECK(lp >= out.lower);
        CHECK(lp <= out.upper);
    }
}

TEST_CASE("monotonicity of the hierarchy in k") {
    Program p = parse_program("vars: x in [0,1]; y in [0,1] expr: x*y - y");
    ErrorForm ef = make_error_form(p, default_machine_eps());
    std::vector<Polynomial<Rational>> s;
    for (const auto& rf : scaled_error_coefficients(ef)) s.push_back(rf.as_polynomial());
    NormalizedConstraints nc = normalize_constraints(p);
    Rational prev_lo, prev_hi;
    bool first = true;
    for (int k = 3; k <= 5; ++k) {
        KSAssembly a = assemble_lp(s, nc, k);
        KSBound lo = ks_bound(a, BoundDirection::Lower, LPBackend::Exact);
        KSBound hi = ks_bound(a, BoundDirection::Upper, LPBackend::Exact);
        REQUIRE(lo.status == SolveStatus::Optimal);
        REQUIRE(hi.status == SolveStatus::Optimal);
        if (!first) {
            CHECK(lo.value >= prev_lo);
            CHECK(hi.value <= prev_hi);
        }
        prev_lo = lo.value;
        prev_hi = hi.value;
        first = false;
    }
}

TEST_CASE("certificate reconstruction equals l' exactly on the exact path") {
    ErrorForm ef = overview_form();
    std::vector<Polynomial<Rational>> s;
    for (const auto& rf : scaled_error_coefficients(ef)) s.push_back(rf.as_polynomial());
    NormalizedConstraints nc = normalize_constraints(ef.program());
    KSAssembly a = assemble_lp(s, nc, 3);
    KSBound lo = ks_bound(a, BoundDirection::Lower, LPBackend::Exact);
    REQUIRE(lo.status == SolveStatus::Optimal);
    // sum_j phi_j + t must reconstruct l' coefficient by coefficient
    std::vector<Rational> recon(a.equations(), Rational(0));
    recon[a.zero_row] += lo.certificate.t;
    for (const auto& [col, lam] : lo.certificate.lambdas)
        for (const auto& [r, c] : a.lambda_cols[col]) recon[r] += lam * c;
    for (std::size_t r = 0; r < a.equations(); ++r) CHECK(recon[r] == a.lprime[r]);
}

TEST_CASE("float LP path with certificate repair stays sound") {
    ErrorForm ef = overview_form();
    std::vector<Polynomial<Rational>> s;
    for (const auto& rf : scaled_error_coefficients(ef)) s.push_back(rf.as_polynomial());
    NormalizedConstraints nc = normalize_constraints(ef.program());
    KSAssembly a = assemble_lp(s, nc, 3);
    KSBound lo = ks_bound(a, BoundDirection::Lower, LPBackend::Float);
    REQUIRE(lo.status == SolveStatus::Optimal);
    // certified value can only move down from the raw optimum
    CHECK(lo.verification.t_certified <= lo.verification.t_raw);
    // and must stay below the true minimum -2
    CHECK(lo.value <= -2 + frac(1, 1000000));
    CHECK(lo.value >= Rational(-201, 100));
}

TEST_CASE("a tampered certificate is repaired, not trusted") {
    ErrorForm ef = overview_form();
    std::vector<Polynomial<Rational>> s;
    for (const auto& rf : scaled_error_coefficients(ef)) s.push_back(rf.as_polynomial());
    NormalizedConstraints nc = normalize_constraints(ef.program());
    KSAssembly a = assemble_lp(s, nc, 3);
    KSBound lo = ks_bound(a, BoundDirection::Lower, LPBackend::Exact);
    KSCertificate cert = lo.certificate;
    cert.t += frac(1, 1000000000000L);  // overstate the bound by 1e-12
    VerifiedBound vb = verify_certificate(cert, a);
    CHECK(!vb.exact);
    CHECK(vb.t_certified <= lo.value);  // repair gives the overstatement back
    // a negative lambda entry is clamped before verification
    KSCertificate neg = lo.certificate;
    if (!neg.lambdas.empty()) {
        neg.lambdas[0].second = frac(-1, 1000000000000L);
        VerifiedBound vb2 = verify_certificate(neg, a);
        CHECK(vb2.t_certified <= neg.t);
    }
}

TEST_CASE("LP text export round-trips through the reader") {
    ErrorForm ef = overview_form();
    std::vector<Polynomial<Rational>> s;
    for (const auto& rf : scaled_error_coefficients(ef)) s.push_back(rf.as_polynomial());
    NormalizedConstraints nc = normalize_constraints(ef.program());
    KSAssembly a = assemble_lp(s, nc, 3);
    std::string text = write_lp_text(a, BoundDirection::Lower);
    StandardLP parsed = parse_lp_text(text);
    CHECK(parsed.nrows == static_cast<int>(a.equations()));
    CHECK(parsed.ncols() == static_cast<int>(a.variables()) + 1);  // t split into two columns
    SolveResult r = solve_lp_exact(parsed);
    REQUIRE(r.optimal());
    CHECK(r.objective_exact == -2);
}

TEST_CASE("fpkristen_run on the overview program") {
    ErrorForm ef = overview_form();
    FpKriStenOptions opt;
    opt.backend = LPBackend::Exact;
    KSOutcome out = fpkristen_run(ef, opt);
    REQUIRE(out.status == SolveStatus::Optimal);
    CHECK(out.order == 3);
    CHECK(out.lp_variables == 106);
    CHECK(out.lp_equations == 22);
    CHECK(out.lower == -2);
    CHECK(out.upper == 2);
    CHECK(out.exact_lp);
    // total = 2 eps + |I^h|
    Rational eps = default_machine_eps();
    CHECK(out.total >= 2 * eps);
    CHECK(out.total <= 2 * eps + 10 * eps * eps);
    // rational bodies are rejected
    Program rational_body = parse_program("vars: x in [1,2] expr: 1.0/x");
    ErrorForm ef2 = make_error_form(rational_body, default_machine_eps());
    CHECK_THROWS_AS(fpkristen_run(ef2), RationalBodyUnsupported);
}
