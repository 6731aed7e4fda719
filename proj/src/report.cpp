#include "fpcert/report.hpp"

#include <chrono>
#include <iomanip>
#include <sstream>

#include "fpcert/bernstein.hpp"
#include "json.hpp"

namespace fpcert {

using nlohmann::json;

namespace {

json entry_to_json(const ReportEntry& e) {
    json j;
    j["benchmark"] = e.benchmark;
    j["method"] = e.method;
    j["backend"] = e.backend;
    j["n"] = e.n;
    j["m"] = e.m;
    j["d"] = e.d;
    j["k"] = e.k_used;
    j["status"] = e.status;
    j["finite"] = e.finite;
    j["linear_bound"] = e.linear_bound;
    j["linear_bound_rational"] = e.linear_bound_rational;
    j["linear_over_eps"] = e.linear_over_eps;
    j["remainder_lo"] = e.remainder_lo;
    j["remainder_hi"] = e.remainder_hi;
    j["total"] = e.total;
    j["total_rational"] = e.total_rational;
    j["sharp"] = e.sharp;
    j["lp_variables"] = e.lp_variables;
    j["lp_equations"] = e.lp_equations;
    j["certificate"] = e.certificate;
    j["wall_seconds"] = e.wall_seconds;
    j["reference"] = e.reference;
    j["ratio_to_reference"] = e.ratio_to_reference;
    return j;
}

ReportEntry entry_from_json(const json& j) {
    ReportEntry e;
    e.benchmark = j.at("benchmark").get<std::string>();
    e.method = j.at("method").get<std::string>();
    e.backend = j.at("backend").get<std::string>();
    e.n = j.at("n").get<int>();
    e.m = j.at("m").get<int>();
    e.d = j.at("d").get<int>();
    e.k_used = j.at("k").get<std::string>();
    e.status = j.at("status").get<std::string>();
    e.finite = j.at("finite").get<bool>();
    e.linear_bound = j.at("linear_bound").get<std::string>();
    e.linear_bound_rational = j.at("linear_bound_rational").get<std::string>();
    e.linear_over_eps = j.at("linear_over_eps").get<std::string>();
    e.remainder_lo = j.at("remainder_lo").get<std::string>();
    e.remainder_hi = j.at("remainder_hi").get<std::string>();
    e.total = j.at("total").get<std::string>();
    e.total_rational = j.at("total_rational").get<std::string>();
    e.sharp = j.at("sharp").get<bool>();
    e.lp_variables = j.at("lp_variables").get<std::size_t>();
    e.lp_equations = j.at("lp_equations").get<std::size_t>();
    e.certificate = j.at("certificate").get<std::string>();
    e.wall_seconds = j.at("wall_seconds").get<double>();
    e.reference = j.at("reference").get<std::string>();
    e.ratio_to_reference = j.at("ratio_to_reference").get<double>();
    return e;
}

double ratio_vs_reference(const std::string& total, const std::string& reference) {
    if (reference.empty() || total.empty()) return 0.0;
    double t = std::stod(total);
    double r = std::stod(reference);
    if (r == 0.0) return 0.0;
    return t / r;
}

}  // namespace

std::string report_to_json(const std::vector<ReportEntry>& entries) {
    json arr = json::array();
    for (const auto& e : entries) arr.push_back(entry_to_json(e));
    return arr.dump(2);
}

std::vector<ReportEntry> report_from_json(const std::string& text) {
    json arr = json::parse(text);
    std::vector<ReportEntry> out;
    for (const auto& j : arr) out.push_back(entry_from_json(j));
    return out;
}

std::string report_table(const std::vector<ReportEntry>& entries) {
    std::ostringstream os;
    os << std::left << std::setw(14) << "benchmark" << std::setw(6) << "meth" << std::setw(7)
       << "bknd" << std::setw(4) << "n" << std::setw(4) << "m" << std::setw(4) << "d"
       << std::setw(12) << "total" << std::setw(11) << "reference" << std::setw(7) << "ratio"
       << std::setw(11) << "cert" << "time(s)" << "\n";
    for (const auto& e : entries) {
        std::ostringstream ratio;
        if (e.ratio_to_reference > 0) ratio << std::fixed << std::setprecision(3) << e.ratio_to_reference;
        os << std::left << std::setw(14) << e.benchmark << std::setw(6) << e.method << std::setw(7)
           << e.backend << std::setw(4) << e.n << std::setw(4) << e.m << std::setw(4) << e.d
           << std::setw(12) << (e.status == "ok" ? e.total : e.status) << std::setw(11)
           << (e.reference.empty() ? "-" : e.reference) << std::setw(7)
           << (ratio.str().empty() ? "-" : ratio.str()) << std::setw(11) << e.certificate
           << std::fixed << std::setprecision(3) << e.wall_seconds << "\n";
    }
    return os.str();
}

Rational parse_eps(const std::string& text) {
    if (text.rfind("2^", 0) == 0) {
        long k = std::stol(text.substr(2));
        Rational eps(1);
        if (k >= 0)
            mpq_mul_2exp(eps.get_mpq_t(), eps.get_mpq_t(), static_cast<unsigned long>(k));
        else
            mpq_div_2exp(eps.get_mpq_t(), eps.get_mpq_t(), static_cast<unsigned long>(-k));
        return eps;
    }
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Rational num = rational_from_decimal(text.substr(0, slash));
        Rational den = rational_from_decimal(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in eps");
        return num / den;
    }
    return rational_from_decimal(text);
}

namespace {

std::string decimal3(const Rational& r) { return rational_to_decimal_string(r, 3); }

template <class S>
std::string interval_lo_string(const Interval<S>& iv);
template <>
std::string interval_lo_string(const Interval<Rational>& iv) {
    return rational_to_decimal_string(iv.lo, 6);
}
template <>
std::string interval_lo_string(const Interval<double>& iv) {
    std::ostringstream os;
    os << std::setprecision(17) << iv.lo;
    return os.str();
}

template <class S>
std::string interval_hi_string(const Interval<S>& iv);
template <>
std::string interval_hi_string(const Interval<Rational>& iv) {
    return rational_to_decimal_string(iv.hi, 6);
}
template <>
std::string interval_hi_string(const Interval<double>& iv) {
    std::ostringstream os;
    os << std::setprecision(17) << iv.hi;
    return os.str();
}

ReportEntry base_entry(const Program& prog, const ErrorForm& ef, const std::string& method,
                       const std::string& backend) {
    ReportEntry e;
    e.benchmark = prog.name;
    e.method = method;
    e.backend = backend;
    e.n = static_cast<int>(prog.nvars());
    e.m = ef.m();
    int sdeg = 0;
    bool rational_body = !prog.body_is_polynomial();
    for (const auto& sj : ef.s)
        sdeg = std::max<int>(sdeg, std::max(sj.num().total_degree(), sj.den().total_degree()));
    e.d = rational_body ? sdeg : sdeg + 1;  // degree of l' (numerator degree for rational bodies)
    return e;
}

ReportEntry bern_entry(const Program& prog, const ErrorForm& ef, const AnalyzeOptions& opt) {
    ReportEntry e = base_entry(prog, ef, "bern", opt.backend);
    e.reference = opt.reference_bern;
    auto t0 = std::chrono::steady_clock::now();
    if (opt.backend == "float") {
        BernOutcome<double> out = fpbern_run<double>(ef, opt.degree, opt.max_elevations);
        e.finite = out.finite;
        e.k_used = out.k_used.to_string();
        e.sharp = out.sharp;
        if (out.finite) {
            std::ostringstream t;
            t << std::setprecision(17) << out.total;
            e.total = rational_to_decimal_string(rational_from_double_exact(out.total), 3);
            e.linear_bound = rational_to_decimal_string(
                rational_from_double_exact(to_double_nearest(ef.eps) * out.linear_bound), 6);
            std::ostringstream loe;
            loe << std::setprecision(17) << out.linear_bound;
            e.linear_over_eps = loe.str();
            e.remainder_lo = interval_lo_string(out.h);
            e.remainder_hi = interval_hi_string(out.h);
        } else {
            e.status = "infinite-bound";
        }
        e.certificate = "float";
    } else {
        BernOutcome<Rational> out = fpbern_run<Rational>(ef, opt.degree, opt.max_elevations);
        e.finite = out.finite;
        e.k_used = out.k_used.to_string();
        e.sharp = out.sharp;
        if (out.finite) {
            e.total = decimal3(out.total);
            e.total_rational = rational_to_string(out.total);
            e.linear_bound = rational_to_decimal_string(ef.eps * out.linear_bound, 6);
            e.linear_bound_rational = rational_to_string(ef.eps * out.linear_bound);
            e.linear_over_eps = rational_to_decimal_string(out.linear_bound, 17);
            e.remainder_lo = interval_lo_string(out.h);
            e.remainder_hi = interval_hi_string(out.h);
        } else {
            e.status = "infinite-bound";
        }
        e.certificate = "exact";
    }
    e.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    e.ratio_to_reference = ratio_vs_reference(e.total, e.reference);
    return e;
}

ReportEntry ks_entry(const Program& prog, const ErrorForm& ef, const AnalyzeOptions& opt) {
    ReportEntry e = base_entry(prog, ef, "ks", opt.backend);
    e.reference = opt.reference_ks;
    FpKriStenOptions kopt;
    kopt.order = opt.order;
    kopt.backend = opt.backend == "float" ? LPBackend::Float : opt.lp;
    kopt.limits = opt.limits;
    auto t0 = std::chrono::steady_clock::now();
    KSOutcome out = fpkristen_run(ef, kopt);
    e.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    e.k_used = std::to_string(out.order);
    e.lp_variables = out.lp_variables;
    e.lp_equations = out.lp_equations;
    if (out.status != SolveStatus::Optimal) {
        e.status = to_string(out.status);
        if (out.status == SolveStatus::Infeasible)
            e.status += " (try a higher --order)";
        e.finite = false;
        return e;
    }
    e.total = decimal3(out.total);
    e.total_rational = rational_to_string(out.total);
    Rational half = std::max(rational_abs(out.lower), rational_abs(out.upper));
    e.linear_bound = rational_to_decimal_string(ef.eps * half, 6);
    e.linear_bound_rational = rational_to_string(ef.eps * half);
    e.linear_over_eps = rational_to_decimal_string(half, 17);
    e.remainder_lo = interval_lo_string(out.h);
    e.remainder_hi = interval_hi_string(out.h);
    e.certificate = out.exact_lp
                        ? "exact"
                        : "repaired(" + rational_to_decimal_string(out.residual_l1, 2) + ")";
    e.ratio_to_reference = ratio_vs_reference(e.total, e.reference);
    return e;
}

}  // namespace

std::vector<ReportEntry> analyze_program(const Program& prog, const AnalyzeOptions& opt) {
    ErrorForm ef = make_error_form(prog, opt.eps);
    std::vector<ReportEntry> out;
    const bool want_bern = opt.method == "bern" || opt.method == "both";
    const bool want_ks = opt.method == "ks" || opt.method == "both";
    if (want_bern) out.push_back(bern_entry(prog, ef, opt));
    if (want_ks) {
        if (!prog.body_is_polynomial()) {
            if (opt.method == "ks")
                throw MethodInapplicable("method ks requires a polynomial body; '" + prog.name +
                                         "' is rational");
            // method both on a rational body: report the bern entry only
        } else {
            out.push_back(ks_entry(prog, ef, opt));
        }
    }
    return out;
}

}  // namespace fpcert
