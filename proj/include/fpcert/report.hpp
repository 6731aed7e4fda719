#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fpcert/krivine.hpp"
#include "fpcert/rounding.hpp"

namespace fpcert {

struct MethodInapplicable : std::runtime_error {
    explicit MethodInapplicable(const std::string& what) : std::runtime_error(what) {}
};

// One analysis outcome. Bounds travel as decimal strings (plus exact rational
// strings on the exact backend) so reports round-trip through JSON bit-exactly.
struct ReportEntry {
    std::string benchmark;
    std::string method;   // bern | ks
    std::string backend;  // exact | float
    int n = 0;
    int m = 0;
    int d = 0;
    std::string k_used;   // multi-degree for bern, relaxation order for ks
    std::string status = "ok";
    bool finite = true;
    std::string linear_bound;           // eps-scaled half-width of I^l
    std::string linear_bound_rational;  // exact backend only
    std::string linear_over_eps;        // \bar l' itself
    std::string remainder_lo;
    std::string remainder_hi;
    std::string total;
    std::string total_rational;
    bool sharp = false;
    std::size_t lp_variables = 0;   // ks only
    std::size_t lp_equations = 0;   // ks only
    std::string certificate = "n/a";
    double wall_seconds = 0.0;
    std::string reference;          // stored Table-1 value, empty when none
    double ratio_to_reference = 0.0;

    bool operator==(const ReportEntry& o) const = default;
};

std::string report_to_json(const std::vector<ReportEntry>& entries);
std::vector<ReportEntry> report_from_json(const std::string& text);
std::string report_table(const std::vector<ReportEntry>& entries);

struct AnalyzeOptions {
    std::string method = "both";   // bern | ks | both
    std::string backend = "exact"; // scalar backend for bern; ks output is always certified
    LPBackend lp = LPBackend::Auto;
    std::optional<int> order;
    std::optional<MultiIndex> degree;
    Rational eps = default_machine_eps();
    int max_elevations = 3;
    SolveLimits limits;
    std::string reference_bern;  // optional stored references for ratio columns
    std::string reference_ks;
};

// Runs the requested engines on one program; throws MethodInapplicable when
// the Krivine-Stengle engine is asked for a rational body.
std::vector<ReportEntry> analyze_program(const Program& prog, const AnalyzeOptions& opt);

Rational parse_eps(const std::string& text);  // decimal, num/den, or 2^-k

}  // namespace fpcert
