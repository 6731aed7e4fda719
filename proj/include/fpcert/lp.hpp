#pragma once

#include <string>
#include <vector>

#include "fpcert/rational.hpp"

namespace fpcert {

// Equality-form LP: maximize c.x subject to A x = b, x >= 0, columns sparse.
// Krivine-Stengle assembly wraps the free bound variable t as t+ - t-.
struct StandardLP {
    int nrows = 0;
    std::vector<std::vector<std::pair<int, Rational>>> cols;
    std::vector<Rational> b;
    std::vector<Rational> c;

    int ncols() const { return static_cast<int>(cols.size()); }
    void add_row_count(int n) { nrows = n; }
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, IterationLimit, TimeLimit };

inline const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unbounded: return "unbounded";
        case SolveStatus::IterationLimit: return "iteration-limit";
        case SolveStatus::TimeLimit: return "time-limit";
    }
    return "?";
}

struct SolveResult {
    SolveStatus status = SolveStatus::IterationLimit;
    bool exact = false;
    Rational objective_exact;          // valid when exact
    double objective = 0.0;            // always filled on Optimal
    std::vector<Rational> x_exact;     // exact path
    std::vector<double> x;             // float path
    long iterations = 0;

    bool optimal() const { return status == SolveStatus::Optimal; }
};

struct SolveLimits {
    long max_iterations = 1000000;
    double wall_seconds = 600.0;
};

// Reference solver: two-phase primal simplex over exact rationals with
// Bland's rule (guaranteed termination, certificate-grade output).
SolveResult solve_lp_exact(const StandardLP& lp, const SolveLimits& limits = {});

// Fast path: sparse revised simplex in doubles (LU-factorized basis with
// product-form updates). Output must go through certificate verification
// before being reported.
SolveResult solve_lp_float(const StandardLP& lp, const SolveLimits& limits = {});

}  // namespace fpcert
