#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "fpcert/benchmarks.hpp"
#include "fpcert/report.hpp"

using namespace fpcert;

namespace {

int status_exit_code(const std::vector<ReportEntry>& entries) {
    for (const auto& e : entries)
        if (e.status != "ok") return 3;
    return 0;
}

SolveLimits limits_from_env() {
    SolveLimits lim;
    if (const char* env = std::getenv("FPCERT_SOLVER_BUDGET_SECS")) {
        try {
            lim.wall_seconds = std::stod(env);
        } catch (...) {
            std::cerr << "warning: ignoring malformed FPCERT_SOLVER_BUDGET_SECS\n";
        }
    }
    return lim;
}

std::optional<MultiIndex> parse_degree(const std::string& text, std::size_t nvars) {
    if (text.empty()) return std::nullopt;
    MultiIndex k(nvars);
    if (text.find(',') == std::string::npos) {
        uint32_t v = static_cast<uint32_t>(std::stoul(text));
        for (std::size_t i = 0; i < nvars; ++i) k[i] = v;
        return k;
    }
    std::stringstream ss(text);
    std::string part;
    std::size_t i = 0;
    while (std::getline(ss, part, ',')) {
        if (i >= nvars) throw std::invalid_argument("--degree has more entries than variables");
        k[i++] = static_cast<uint32_t>(std::stoul(part));
    }
    if (i != nvars) throw std::invalid_argument("--degree entry count does not match the variables");
    return k;
}

void export_lp_files(const Program& prog, const AnalyzeOptions& opt, const std::string& path) {
    ErrorForm ef = make_error_form(prog, opt.eps);
    if (!prog.body_is_polynomial())
        throw MethodInapplicable("--export-lp needs a polynomial body");
    std::vector<Polynomial<Rational>> s;
    for (const auto& rf : scaled_error_coefficients(ef)) s.push_back(rf.as_polynomial());
    int sdeg = 0;
    for (const auto& sj : s) sdeg = std::max<int>(sdeg, sj.total_degree());
    Polynomial<Rational> body = dag_to_polynomial(prog.dag, prog.root, prog.nvars());
    int order = opt.order.value_or(std::max<int>(body.total_degree() + 1, sdeg + 1));
    NormalizedConstraints nc = normalize_constraints(prog);
    KSAssembly asmb = assemble_lp(s, nc, order);
    std::ofstream lo(path + ".lower.lp"), hi(path + ".upper.lp");
    lo << write_lp_text(asmb, BoundDirection::Lower);
    hi << write_lp_text(asmb, BoundDirection::Upper);
    std::cerr << "wrote " << path << ".lower.lp and " << path << ".upper.lp\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified floating-point roundoff bounds via Bernstein expansions and "
                 "Krivine-Stengle LP relaxations"};
    app.require_subcommand(1);

    std::string file, method = "both", backend = "exact", lp_choice = "auto";
    std::string degree_text, eps_text = "2^-53", export_lp_path;
    std::optional<int> order;
    int max_elevations = 3;
    bool as_json = false;
    auto* analyze = app.add_subcommand("analyze", "bound the roundoff error of one program");
    analyze->add_option("file", file, "program file")->required()->check(CLI::ExistingFile);
    analyze->add_option("--method", method)->check(CLI::IsMember({"bern", "ks", "both"}));
    analyze->add_option("--backend", backend)->check(CLI::IsMember({"exact", "float"}));
    analyze->add_option("--lp", lp_choice, "LP path for the ks engine")
        ->check(CLI::IsMember({"auto", "exact", "float"}));
    analyze->add_option("--degree", degree_text, "Bernstein multi-degree (int or comma list)");
    analyze
        ->add_option_function<int>(
            "--order", [&](const int& v) { order = v; }, "Krivine-Stengle relaxation order")
        ->check(CLI::PositiveNumber);
    analyze->add_option("--eps", eps_text, "machine epsilon (decimal, p/q or 2^-k)");
    analyze->add_option("--max-elevations", max_elevations);
    analyze->add_option("--export-lp", export_lp_path, "write the assembled LPs in LP format");
    analyze->add_flag("--json", as_json, "emit JSON instead of a table");

    std::string filter, bench_method = "both", bench_backend = "exact", bench_lp = "auto", out_path;
    bool bench_json = false, include_heavy = false;
    auto* bench = app.add_subcommand("bench", "run the bundled benchmark corpus");
    bench->add_option("--filter", filter, "substring filter on benchmark names");
    bench->add_option("--method", bench_method)->check(CLI::IsMember({"bern", "ks", "both"}));
    bench->add_option("--backend", bench_backend)->check(CLI::IsMember({"exact", "float"}));
    bench->add_option("--lp", bench_lp)->check(CLI::IsMember({"auto", "exact", "float"}));
    bench->add_flag("--include-heavy", include_heavy, "also run the oversized cases");
    bench->add_flag("--json", bench_json);
    bench->add_option("--out", out_path, "write the JSON report to a file");

    int ex_n = 1, ex_nsum = 1, ex_deg = 1;
    auto* ex = app.add_subcommand("ex", "print a generated ex-family program");
    ex->add_option("--n", ex_n)->required();
    ex->add_option("--nsum", ex_nsum)->required();
    ex->add_option("--deg", ex_deg)->required();

    CLI11_PARSE(app, argc, argv);

    auto lp_backend = [](const std::string& s) {
        if (s == "exact") return LPBackend::Exact;
        if (s == "float") return LPBackend::Float;
        return LPBackend::Auto;
    };

    try {
        if (*analyze) {
            std::ifstream in(file);
            std::stringstream buf;
            buf << in.rdbuf();
            Program prog = parse_program(buf.str());

            AnalyzeOptions opt;
            opt.method = method;
            opt.backend = backend;
            opt.lp = lp_backend(lp_choice);
            opt.order = order;
            opt.degree = parse_degree(degree_text, prog.nvars());
            opt.eps = parse_eps(eps_text);
            opt.max_elevations = max_elevations;
            opt.limits = limits_from_env();
            if (const auto* ref = find_benchmark(prog.name)) {
                opt.reference_bern = ref->ref_bern;
                opt.reference_ks = ref->ref_ks;
            }
            if (!export_lp_path.empty()) export_lp_files(prog, opt, export_lp_path);
            std::vector<ReportEntry> entries = analyze_program(prog, opt);
            std::cout << (as_json ? report_to_json(entries) : report_table(entries)) << "\n";
            return status_exit_code(entries);
        }
        if (*bench) {
            BenchRunOptions opt;
            opt.method = bench_method;
            opt.backend = bench_backend;
            opt.lp = lp_backend(bench_lp);
            opt.limits = limits_from_env();
            opt.include_heavy = include_heavy;
            std::vector<ReportEntry> entries = run_benchmarks(filter, opt);
            if (!out_path.empty()) {
                std::ofstream out(out_path);
                out << report_to_json(entries);
            }
            std::cout << (bench_json ? report_to_json(entries) : report_table(entries)) << "\n";
            return status_exit_code(entries);
        }
        if (*ex) {
            std::cout << ex_family_source(ex_n, ex_nsum, ex_deg) << "\n";
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const MethodInapplicable& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const RationalBodyUnsupported& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
