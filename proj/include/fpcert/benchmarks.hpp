#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fpcert/report.hpp"

namespace fpcert {

// One corpus program with its stored reference bounds (three significant
// digits, exactly as printed) and applicability flags.
struct BenchmarkCase {
    std::string name;
    std::string source;
    bool bern = true;   // box-constrained input
    bool ks = true;     // polynomial body
    bool heavy = false; // skipped unless explicitly requested
    int n = 0;
    int m = 0;          // error-variable count this implementation produces
    int table_m = 0;    // count printed in the reference table
    std::string ref_bern;      // FPBern(b) column
    std::string ref_ks;        // FPKriSten column
    std::string ref_real2float;
    std::string ref_rosa;
    std::string ref_fptaylor;
    std::optional<int> ks_order;  // per-case relaxation order override
};

const std::vector<BenchmarkCase>& benchmark_corpus();
const BenchmarkCase* find_benchmark(const std::string& name);

// Generator family sum_{j=0}^{nSum} prod_{k=1}^{deg} (x_1 + ... + x_n) on
// [-1,1]^n. Bundled instances are named ex-<n>-<deg>-<nSum>.
std::string ex_family_source(int n, int nSum, int deg);
Program generate_ex_family(int n, int nSum, int deg);

struct BenchRunOptions {
    std::string method = "both";    // bern | ks | both (intersected with applicability)
    std::string backend = "exact";
    LPBackend lp = LPBackend::Auto;
    Rational eps = default_machine_eps();
    SolveLimits limits;
    bool include_heavy = false;
};

// Runs every corpus case whose name contains the filter substring; per-case
// failures are recorded in the report and the run carries on.
std::vector<ReportEntry> run_benchmarks(const std::string& filter, const BenchRunOptions& opt);

}  // namespace fpcert
