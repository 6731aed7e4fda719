#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fpcert/benchmarks.hpp"
#include "fpcert/report.hpp"

namespace py = pybind11;
using namespace fpcert;

namespace {

py::dict entry_to_dict(const ReportEntry& e) {
    py::dict d;
    d["benchmark"] = e.benchmark;
    d["method"] = e.method;
    d["backend"] = e.backend;
    d["n"] = e.n;
    d["m"] = e.m;
    d["d"] = e.d;
    d["k"] = e.k_used;
    d["status"] = e.status;
    d["finite"] = e.finite;
    d["linear_bound"] = e.linear_bound;
    d["linear_bound_rational"] = e.linear_bound_rational;
    d["linear_over_eps"] = e.linear_over_eps;
    d["remainder_lo"] = e.remainder_lo;
    d["remainder_hi"] = e.remainder_hi;
    d["total"] = e.total;
    d["total_rational"] = e.total_rational;
    d["sharp"] = e.sharp;
    d["lp_variables"] = e.lp_variables;
    d["lp_equations"] = e.lp_equations;
    d["certificate"] = e.certificate;
    d["wall_seconds"] = e.wall_seconds;
    d["reference"] = e.reference;
    d["ratio_to_reference"] = e.ratio_to_reference;
    return d;
}

LPBackend lp_backend_of(const std::string& s) {
    if (s == "exact") return LPBackend::Exact;
    if (s == "float") return LPBackend::Float;
    if (s == "auto") return LPBackend::Auto;
    throw std::invalid_argument("lp must be auto, exact or float");
}

py::list analyze_text(const std::string& source, const std::string& method,
                      const std::string& backend, py::object order, const std::string& eps,
                      const std::string& lp, double budget_seconds) {
    Program prog = parse_program(source);
    AnalyzeOptions opt;
    opt.method = method;
    opt.backend = backend;
    opt.lp = lp_backend_of(lp);
    if (!order.is_none()) opt.order = order.cast<int>();
    opt.eps = parse_eps(eps);
    opt.limits.wall_seconds = budget_seconds;
    if (const auto* ref = find_benchmark(prog.name)) {
        opt.reference_bern = ref->ref_bern;
        opt.reference_ks = ref->ref_ks;
    }
    py::list out;
    for (const auto& e : analyze_program(prog, opt)) out.append(entry_to_dict(e));
    return out;
}

}  // namespace

PYBIND11_MODULE(_fpcert, mod) {
    mod.doc() = "certified floating-point roundoff error bounds (Bernstein and "
                "Krivine-Stengle engines)";

    mod.def("analyze", &analyze_text, py::arg("source"), py::arg("method") = "both",
            py::arg("backend") = "exact", py::arg("order") = py::none(),
            py::arg("eps") = "2^-53", py::arg("lp") = "auto", py::arg("budget_seconds") = 600.0,
            "Analyze a program text; returns one dict per (method) run.");

    mod.def(
        "benchmark_names",
        [] {
            py::list names;
            for (const auto& c : benchmark_corpus()) names.append(c.name);
            return names;
        },
        "Names of the bundled benchmark programs.");

    mod.def(
        "benchmark_source",
        [](const std::string& name) {
            const auto* c = find_benchmark(name);
            if (!c) throw std::invalid_argument("unknown benchmark: " + name);
            return c->source;
        },
        py::arg("name"));

    mod.def("ex_family_source", &ex_family_source, py::arg("n"), py::arg("nsum"), py::arg("deg"),
            "Source text of the generated ex-family program.");

    mod.def(
        "run_benchmarks",
        [](const std::string& filter, const std::string& method, const std::string& backend,
           const std::string& lp, bool include_heavy, double budget_seconds) {
            BenchRunOptions opt;
            opt.method = method;
            opt.backend = backend;
            opt.lp = lp_backend_of(lp);
            opt.include_heavy = include_heavy;
            opt.limits.wall_seconds = budget_seconds;
            py::list out;
            for (const auto& e : run_benchmarks(filter, opt)) out.append(entry_to_dict(e));
            return out;
        },
        py::arg("filter") = "", py::arg("method") = "both", py::arg("backend") = "exact",
        py::arg("lp") = "auto", py::arg("include_heavy") = false, py::arg("budget_seconds") = 600.0);

    py::register_exception<ParseError>(mod, "ProgramParseError", PyExc_ValueError);
    py::register_exception<MethodInapplicable>(mod, "MethodInapplicableError", PyExc_ValueError);
}
