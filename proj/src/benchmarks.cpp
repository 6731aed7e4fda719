#include "fpcert/benchmarks.hpp"

#include <sstream>

namespace fpcert {

namespace {

// Sources are written the way the reference suites spell them: shared
// subterms are repeated verbatim (the DAG interns them), powers appear as
// explicit products, and constants keep their original literal forms. The
// error-variable counts depend on exactly this spelling.
std::vector<BenchmarkCase> build_corpus() {
    std::vector<BenchmarkCase> v;

    v.push_back({"overview", "name: overview vars: x in [0,1] expr: x*x - x", true, true, false, 1,
                 3, 3, "", "", "", "", "", std::nullopt});

    v.push_back({"rigidBody1",
                 "name: rigidBody1 vars: x1 in [-15,15]; x2 in [-15,15]; x3 in [-15,15] "
                 "expr: -x1*x2 - 2.0*x2*x3 - x1 - x3",
                 true, true, false, 3, 10, 10, "5.33e-13", "5.33e-13", "5.33e-13", "5.08e-13",
                 "3.87e-13", std::nullopt});

    v.push_back({"rigidBody2",
                 "name: rigidBody2 vars: x1 in [-15,15]; x2 in [-15,15]; x3 in [-15,15] "
                 "expr: 2.0*x1*x2*x3 + 3.0*x3*x3 - x2*x1*x2*x3 + 3.0*x3*x3 - x2",
                 true, true, false, 3, 15, 15, "6.48e-11", "6.48e-11", "6.48e-11", "6.48e-11",
                 "5.24e-11", std::nullopt});

    v.push_back({"kepler0",
                 "name: kepler0 vars: x1 in [4,6.36]; x2 in [4,6.36]; x3 in [4,6.36]; "
                 "x4 in [4,6.36]; x5 in [4,6.36]; x6 in [4,6.36] "
                 "expr: x2*x5 + x3*x6 - x2*x3 - x5*x6 + x1*(-x1 + x2 + x3 - x4 + x5 + x6)",
                 true, true, false, 6, 21, 21, "1.08e-13", "1.08e-13", "1.18e-13", "1.16e-13",
                 "1.05e-13", std::nullopt});

    v.push_back({"kepler1",
                 "name: kepler1 vars: x1 in [4,6.36]; x2 in [4,6.36]; x3 in [4,6.36]; "
                 "x4 in [4,6.36] "
                 "expr: x1*x4*(-x1 + x2 + x3 - x4) + x2*(x1 - x2 + x3 + x4) + "
                 "x3*(x1 + x2 - x3 + x4) - x2*x3*x4 - x1*x3 - x1*x2 - x4",
                 true, true, false, 4, 28, 28, "4.23e-13", "4.23e-13", "4.47e-13", "6.49e-13",
                 "4.49e-13", std::nullopt});

    v.push_back({"kepler2",
                 "name: kepler2 vars: x1 in [4,6.36]; x2 in [4,6.36]; x3 in [4,6.36]; "
                 "x4 in [4,6.36]; x5 in [4,6.36]; x6 in [4,6.36] "
                 "expr: x1*x4*(-x1 + x2 + x3 - x4 + x5 + x6) + x2*x5*(x1 - x2 + x3 + x4 - x5 + x6) "
                 "+ x3*x6*(x1 + x2 - x3 + x4 + x5 - x6) - x2*x3*x4 - x1*x3*x5 - x1*x2*x6 - "
                 "x4*x5*x6",
                 true, true, false, 6, 42, 42, "2.03e-12", "2.03e-12", "2.09e-12", "2.89e-12",
                 "2.10e-12", std::nullopt});

    v.push_back({"sineTaylor",
                 "name: sineTaylor vars: x in [-1.57079632679,1.57079632679] "
                 "expr: x - x*x*x/6.0 + x*x*x*x*x/120.0 - x*x*x*x*x*x*x/5040.0",
                 true, true, false, 1, 13, 13, "5.51e-16", "5.51e-16", "6.03e-16", "9.56e-16",
                 "6.75e-16", std::nullopt});

    // literal spelling yields two rounded constants here where the reference
    // count has none; the divergence is recorded, bounds are unaffected gates
    v.push_back({"sineOrder3",
                 "name: sineOrder3 vars: x in [-2,2] "
                 "expr: 0.954929658551372*x - 0.12900613773279798*x*x*x",
                 true, true, false, 1, 8, 6, "1.35e-15", "1.25e-15", "1.19e-15", "1.11e-15",
                 "9.97e-16", std::nullopt});

    v.push_back({"sqroot",
                 "name: sqroot vars: x in [0,1] "
                 "expr: 1.0 + 0.5*x - 0.125*x*x + 0.0625*x*x*x - 0.0390625*x*x*x*x",
                 true, true, false, 1, 15, 15, "1.29e-15", "1.29e-15", "1.29e-15", "8.41e-16",
                 "7.13e-16", std::nullopt});

    v.push_back({"himmilbeau",
                 "name: himmilbeau vars: x1 in [-5,5]; x2 in [-5,5] "
                 "expr: (x1*x1 + x2 - 11.0)*(x1*x1 + x2 - 11.0) + (x1 + x2*x2 - 7.0)*(x1 + x2*x2 "
                 "- 7.0)",
                 true, true, false, 2, 11, 11, "2.00e-12", "1.97e-12", "1.43e-12", "1.43e-12",
                 "1.32e-12", std::nullopt});

    v.push_back({"schwefel",
                 "name: schwefel vars: x1 in [-10,10]; x2 in [-10,10]; x3 in [-10,10] "
                 "expr: (x1 - x2)*(x1 - x2) + (x2 - 1.0)*(x2 - 1.0) + (x1 - x3*x3)*(x1 - x3*x3) + "
                 "(x3 - 1.0)*(x3 - 1.0)",
                 true, true, false, 3, 15, 15, "1.48e-11", "1.48e-11", "1.49e-11", "1.49e-11",
                 "1.03e-11", std::nullopt});

    v.push_back({"magnetism",
                 "name: magnetism vars: x1 in [-1,1]; x2 in [-1,1]; x3 in [-1,1]; x4 in [-1,1]; "
                 "x5 in [-1,1]; x6 in [-1,1]; x7 in [-1,1] "
                 "expr: x1*x1 + 2.0*x2*x2 + 2.0*x3*x3 + 2.0*x4*x4 + 2.0*x5*x5 + 2.0*x6*x6 + "
                 "2.0*x7*x7 - x1",
                 true, true, false, 7, 27, 27, "1.27e-14", "1.27e-14", "1.27e-14", "1.27e-14",
                 "7.61e-15", std::nullopt});

    v.push_back({"caprasse",
                 "name: caprasse vars: x1 in [-0.5,0.5]; x2 in [-0.5,0.5]; x3 in [-0.5,0.5]; "
                 "x4 in [-0.5,0.5] "
                 "expr: x1*x3*x3*x3 + 4.0*x2*x3*x3*x4 + 4.0*x1*x3*x4*x4 + 2.0*x2*x4*x4*x4 + "
                 "4.0*(x1*x3) + 4.0*x3*x3 - 10.0*x2*x4 - 10.0*x4*x4 + 2.0",
                 true, true, false, 4, 34, 34, "4.49e-15", "4.49e-15", "5.63e-15", "5.96e-15",
                 "3.04e-15", std::nullopt});

    // semialgebraic programs: Krivine-Stengle only
    v.push_back({"floudas2-6",
                 "name: floudas2-6 vars: x1 in [0,1]; x2 in [0,1]; x3 in [0,1]; x4 in [0,1]; "
                 "x5 in [0,1]; x6 in [0,1]; x7 in [0,1]; x8 in [0,1]; x9 in [0,1]; x10 in [0,1] "
                 "constraints: 0 <= -4.0 + 2.0*x1 + 6.0*x2 + 1.0*x3 + 0.0*x4 + 3.0*x5 + 3.0*x6 + "
                 "2.0*x7 + 6.0*x8 + 2.0*x9 + 2.0*x10; "
                 "0 <= 22.0 - (6.0*x1 - 5.0*x2 + 8.0*x3 - 3.0*x4 + 0.0*x5 + 1.0*x6 + 3.0*x7 + "
                 "8.0*x8 + 9.0*x9 - 3.0*x10); "
                 "0 <= -6.0 - (5.0*x1 + 6.0*x2 + 5.0*x3 + 3.0*x4 + 8.0*x5 - 8.0*x6 + 9.0*x7 + "
                 "2.0*x8 + 0.0*x9 - 9.0*x10); "
                 "0 <= -23.0 - (9.0*x1 + 5.0*x2 + 0.0*x3 - 9.0*x4 + 1.0*x5 - 8.0*x6 + 3.0*x7 - "
                 "9.0*x8 - 9.0*x9 - 3.0*x10); "
                 "0 <= -12.0 - (-8.0*x1 + 7.0*x2 - 4.0*x3 - 5.0*x4 - 9.0*x5 + 1.0*x6 - 7.0*x7 - "
                 "1.0*x8 + 3.0*x9 - 2.0*x10) "
                 "expr: 48.0*x1 + 42.0*x2 + 48.0*x3 + 45.0*x4 + 44.0*x5 + 41.0*x6 + 57.0*x7 + "
                 "42.0*x8 + 45.0*x9 + 46.0*x10 - 50.0*(x1*x1 + x2*x2 + x3*x3 + x4*x4 + x5*x5 + "
                 "x6*x6 + x7*x7 + x8*x8 + x9*x9 + x10*x10)",
                 false, true, true, 10, 50, 50, "", "4.34e-13", "5.15e-13", "5.87e-13", "7.88e-13",
                 std::nullopt});

    v.push_back({"floudas3-3",
                 "name: floudas3-3 vars: x1 in [0,6]; x2 in [0,6]; x3 in [1,5]; x4 in [0,6]; "
                 "x5 in [1,5]; x6 in [0,10] "
                 "constraints: 0 <= (x3 - 3.0)*(x3 - 3.0) + x4 - 4.0; "
                 "0 <= (x5 - 3.0)*(x5 - 3.0) + x6 - 4.0; "
                 "0 <= 2.0 - x1 + 3.0*x2; 0 <= 2.0 + x1 - x2; 0 <= 6.0 - x1 - x2; 0 <= x1 + x2 - "
                 "2.0 "
                 "expr: -25.0*(x1 - 2.0)*(x1 - 2.0) - (x2 - 2.0)*(x2 - 2.0) - (x3 - 1.0)*(x3 - "
                 "1.0) - (x4 - 4.0)*(x4 - 4.0) - (x5 - 1.0)*(x5 - 1.0) - (x6 - 4.0)*(x6 - 4.0)",
                 false, true, true, 6, 25, 25, "", "4.05e-13", "5.81e-13", "4.05e-13", "5.76e-13",
                 std::nullopt});

    v.push_back({"floudas3-4",
                 "name: floudas3-4 vars: x1 in [0,2]; x2 in [0,2]; x3 in [0,3] "
                 "constraints: 0 <= 4.0 - x1 - x2 - x3; 0 <= 6.0 - 3.0*x2 - x3; "
                 "0 <= -0.75 + 2.0*x1 - 2.0*x3 + 4.0*x1*x1 - 4.0*x1*x2 + 4.0*x1*x3 + 2.0*x2*x2 - "
                 "2.0*x2*x3 + 2.0*x3*x3 "
                 "expr: -2.0*x1 + x2 - x3",
                 false, true, false, 3, 7, 7, "", "2.67e-15", "2.78e-15", "2.56e-15", "2.23e-15",
                 std::nullopt});

    v.push_back({"floudas4-6",
                 "name: floudas4-6 vars: x1 in [0,3]; x2 in [0,4] "
                 "constraints: 0 <= 2.0*x1*x1*x1*x1 - 8.0*x1*x1*x1 + 8.0*x1*x1 - x2; "
                 "0 <= 4.0*x1*x1*x1*x1 - 32.0*x1*x1*x1 + 88.0*x1*x1 - 96.0*x1 + 36.0 - x2 "
                 "expr: -x1 - x2",
                 false, true, false, 2, 4, 4, "", "1.89e-15", "1.82e-15", "1.33e-15", "1.23e-15",
                 std::nullopt});

    v.push_back({"floudas4-7",
                 "name: floudas4-7 vars: x1 in [0,2]; x2 in [0,3] "
                 "constraints: 0 <= -2.0*x1*x1*x1*x1 + 2.0 - x2 "
                 "expr: -12.0*x1 - 7.0*x2 + x2*x2",
                 false, true, false, 2, 8, 8, "", "2.07e-14", "1.06e-14", "1.31e-14", "1.80e-14",
                 std::nullopt});

    // rational programs: Bernstein only
    v.push_back({"doppler1",
                 "name: doppler1 vars: x1 in [-100,100]; x2 in [20,20000]; x3 in [-30,50] "
                 "expr: -(331.0 + 0.6*x3)*x2 / (((331.0 + 0.6*x3) + x1)*((331.0 + 0.6*x3) + x1))",
                 true, false, false, 3, 11, 11, "1.65e-13", "", "7.65e-12", "4.92e-13", "1.59e-13",
                 std::nullopt});
    v.push_back({"doppler2",
                 "name: doppler2 vars: x1 in [-125,125]; x2 in [15,25000]; x3 in [-40,60] "
                 "expr: -(331.0 + 0.6*x3)*x2 / (((331.0 + 0.6*x3) + x1)*((331.0 + 0.6*x3) + x1))",
                 true, false, false, 3, 11, 11, "3.14e-13", "", "1.57e-11", "1.29e-12", "2.90e-13",
                 std::nullopt});
    v.push_back({"doppler3",
                 "name: doppler3 vars: x1 in [-300,120]; x2 in [320,20300]; x3 in [-50,30] "
                 "expr: -(331.0 + 0.6*x3)*x2 / (((331.0 + 0.6*x3) + x1)*((331.0 + 0.6*x3) + x1))",
                 true, false, false, 3, 11, 11, "8.14e-14", "", "8.55e-12", "2.03e-13", "8.22e-14",
                 std::nullopt});

    v.push_back({"verhulst",
                 "name: verhulst vars: x in [0.1,0.3] "
                 "expr: (4.0*x) / (1.0 + (100.0/111.0)*x)",
                 true, false, false, 1, 5, 5, "4.40e-16", "", "4.67e-16", "6.82e-16", "3.53e-16",
                 std::nullopt});

    v.push_back({"carbonGas",
                 "name: carbonGas vars: x in [0.1,0.5] "
                 "expr: (3.5e7 + 0.401*((1000.0/x)*(1000.0/x)))*(x - 1000.0*42.7e-7) - "
                 "1.3806503e-23*1000.0*300.0",
                 true, false, false, 1, 11, 11, "1.42e-08", "", "2.21e-08", "4.64e-08", "1.23e-08",
                 std::nullopt});

    v.push_back({"predPrey",
                 "name: predPrey vars: x in [0.1,0.3] "
                 "expr: (4.0*x*x) / (1.0 + ((100.0/111.0)*x)*((100.0/111.0)*x))",
                 true, false, false, 1, 7, 7, "2.32e-16", "", "2.52e-16", "2.94e-16", "1.89e-16",
                 std::nullopt});

    v.push_back({"turbine1",
                 "name: turbine1 vars: x1 in [-4.5,-0.3]; x2 in [0.4,0.9]; x3 in [3.8,7.8] "
                 "expr: 3.0 + 2.0/(x3*x3) - 0.125*(3.0 - 2.0*x1)*(x2*x2*x3*x3)/(1.0 - x1) - 4.5",
                 true, false, false, 3, 17, 17, "7.75e-14", "", "2.45e-11", "1.25e-13", "2.33e-14",
                 std::nullopt});
    v.push_back({"turbine2",
                 "name: turbine2 vars: x1 in [-4.5,-0.3]; x2 in [0.4,0.9]; x3 in [3.8,7.8] "
                 "expr: 6.0*x1 - 0.5*x1*(x2*x2*x3*x3)/(1.0 - x1) - 2.5",
                 true, false, false, 3, 13, 13, "1.16e-13", "", "2.08e-12", "1.76e-13", "3.14e-14",
                 std::nullopt});
    v.push_back({"turbine3",
                 "name: turbine3 vars: x1 in [-4.5,-0.3]; x2 in [0.4,0.9]; x3 in [3.8,7.8] "
                 "expr: 3.0 - 2.0/(x3*x3) - 0.125*(1.0 + 2.0*x1)*(x2*x2*x3*x3)/(1.0 - x1) - 0.5",
                 true, false, false, 3, 17, 17, "5.36e-14", "", "1.71e-11", "8.50e-14", "1.70e-14",
                 std::nullopt});

    v.push_back({"jet",
                 "name: jet vars: x1 in [-5,5]; x2 in [-20,20] "
                 "expr: x1 + ((2.0*x1*((3.0*(x1*x1) + 2.0*x2 - x1)/((x1*x1) + 1.0))*(((3.0*(x1*x1) + 2.0*x2 - x1)/((x1*x1) + 1.0)) - 3.0) + (x1*x1)*(4.0*((3.0*(x1*x1) + 2.0*x2 - x1)/((x1*x1) + 1.0)) - 6.0))*((x1*x1) + 1.0) + 3.0*(x1*x1)*((3.0*(x1*x1) + 2.0*x2 - x1)/((x1*x1) + 1.0)) + (x1*x1)*x1 + x1 + 3.0*((3.0*(x1*x1) + 2.0*x2 - x1)/((x1*x1) + 1.0)))",
                 true, false, false, 2, 26, 24, "2.73e-09", "", "", "1.62e-08", "1.50e-11",
                 std::nullopt});

    // generated family: name carries (n, deg, nSum)
    struct ExRow {
        int n, deg, nsum, m;
        const char* bern;
        const char* ks;
        const char* r2f;
        const char* rosa;
        const char* fpt;
    };
    const ExRow exrows[] = {
        {2, 2, 5, 9, "2.23e-14", "2.23e-14", "2.23e-14", "2.23e-14", "1.96e-14"},
        {2, 2, 10, 14, "5.33e-14", "5.33e-14", "5.33e-15", "5.33e-14", "4.85e-14"},
        {2, 2, 15, 19, "9.55e-14", "9.55e-14", "9.55e-14", "9.55e-14", "8.84e-14"},
        {2, 2, 20, 24, "1.49e-13", "1.49e-13", "", "1.49e-13", "1.40e-13"},
        {2, 5, 2, 9, "1.67e-13", "1.67e-13", "1.67e-13", "1.67e-13", "1.41e-13"},
        {2, 10, 2, 14, "1.05e-11", "1.34e-11", "1.05e-11", "1.05e-11", "8.76e-12"},
        {5, 2, 2, 12, "8.55e-14", "8.55e-14", "8.55e-14", "8.55e-14", "7.72e-14"},
        {10, 2, 2, 22, "5.16e-13", "5.16e-13", "5.16e-13", "5.16e-13", "4.82e-13"},
    };
    for (const ExRow& r : exrows) {
        std::string name = "ex-" + std::to_string(r.n) + "-" + std::to_string(r.deg) + "-" +
                           std::to_string(r.nsum);
        BenchmarkCase c;
        c.name = name;
        c.source = ex_family_source(r.n, r.nsum, r.deg);
        c.bern = true;
        c.ks = true;
        c.heavy = (r.n >= 5);  // exponential Bernstein tensors in dimension
        c.n = r.n;
        c.m = r.m;
        c.table_m = r.m;
        c.ref_bern = r.bern;
        c.ref_ks = r.ks;
        c.ref_real2float = r.r2f;
        c.ref_rosa = r.rosa;
        c.ref_fptaylor = r.fpt;
        v.push_back(std::move(c));
    }
    return v;
}

}  // namespace

const std::vector<BenchmarkCase>& benchmark_corpus() {
    static const std::vector<BenchmarkCase> corpus = build_corpus();
    return corpus;
}

const BenchmarkCase* find_benchmark(const std::string& name) {
    for (const auto& c : benchmark_corpus())
        if (c.name == name) return &c;
    return nullptr;
}

std::string ex_family_source(int n, int nSum, int deg) {
    if (n < 1 || nSum < 1 || deg < 1) throw std::invalid_argument("ex family needs n, nSum, deg >= 1");
    std::ostringstream os;
    os << "name: ex-" << n << "-" << deg << "-" << nSum << " vars: ";
    for (int i = 1; i <= n; ++i) {
        if (i > 1) os << "; ";
        os << "x" << i << " in [-1,1]";
    }
    os << " expr: ";
    std::ostringstream sum;
    sum << "(";
    for (int i = 1; i <= n; ++i) {
        if (i > 1) sum << " + ";
        sum << "x" << i;
    }
    sum << ")";
    std::ostringstream prod;
    for (int k = 0; k < deg; ++k) {
        if (k) prod << "*";
        prod << sum.str();
    }
    for (int j = 0; j <= nSum; ++j) {
        if (j) os << " + ";
        os << prod.str();
    }
    return os.str();
}

Program generate_ex_family(int n, int nSum, int deg) {
    return parse_program(ex_family_source(n, nSum, deg));
}

std::vector<ReportEntry> run_benchmarks(const std::string& filter, const BenchRunOptions& opt) {
    std::vector<ReportEntry> report;
    for (const auto& c : benchmark_corpus()) {
        if (!filter.empty() && c.name.find(filter) == std::string::npos) continue;
        if (c.heavy && !opt.include_heavy) continue;
        bool want_bern = (opt.method == "bern" || opt.method == "both") && c.bern;
        bool want_ks = (opt.method == "ks" || opt.method == "both") && c.ks;
        if (!want_bern && !want_ks) continue;

        AnalyzeOptions aopt;
        aopt.backend = opt.backend;
        aopt.lp = opt.lp;
        aopt.eps = opt.eps;
        aopt.limits = opt.limits;
        aopt.order = c.ks_order;
        aopt.reference_bern = c.ref_bern;
        aopt.reference_ks = c.ref_ks;

        Program prog;
        try {
            prog = parse_program(c.source);
        } catch (const std::exception& e) {
            ReportEntry bad;
            bad.benchmark = c.name;
            bad.status = std::string("parse error: ") + e.what();
            report.push_back(bad);
            continue;
        }
        if (want_bern) {
            aopt.method = "bern";
            try {
                auto entries = analyze_program(prog, aopt);
                report.insert(report.end(), entries.begin(), entries.end());
            } catch (const std::exception& e) {
                ReportEntry bad;
                bad.benchmark = c.name;
                bad.method = "bern";
                bad.status = std::string("error: ") + e.what();
                report.push_back(bad);
            }
        }
        if (want_ks) {
            aopt.method = "ks";
            try {
                auto entries = analyze_program(prog, aopt);
                report.insert(report.end(), entries.begin(), entries.end());
            } catch (const std::exception& e) {
                ReportEntry bad;
                bad.benchmark = c.name;
                bad.method = "ks";
                bad.status = std::string("error: ") + e.what();
                report.push_back(bad);
            }
        }
    }
    return report;
}

}  // namespace fpcert
