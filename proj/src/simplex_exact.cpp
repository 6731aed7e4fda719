#include <chrono>

#include "fpcert/lp.hpp"

namespace fpcert {

namespace {

using Clock = std::chrono::steady_clock;

// Full-tableau two-phase simplex in exact rational arithmetic. Bland's rule
// (lowest eligible index enters, lowest-index basic leaves on ties) rules out
// cycling, so every run ends with a definitive status.
class ExactSimplex {
  public:
    ExactSimplex(const StandardLP& lp, const SolveLimits& limits) : lp_(lp), limits_(limits) {
        m_ = lp.nrows;
        n_ = lp.ncols();
        tab_.assign(m_, std::vector<Rational>(n_ + m_, Rational(0)));
        rhs_.assign(m_, Rational(0));
        basis_.resize(m_);
        for (int j = 0; j < n_; ++j)
            for (const auto& [i, v] : lp.cols[j]) tab_[i][j] = v;
        for (int i = 0; i < m_; ++i) rhs_[i] = lp.b[i];
        // flip rows to make the artificial start feasible
        for (int i = 0; i < m_; ++i) {
            if (rhs_[i] < 0) {
                rhs_[i] = -rhs_[i];
                for (int j = 0; j < n_; ++j) tab_[i][j] = -tab_[i][j];
            }
            tab_[i][n_ + i] = 1;
            basis_[i] = n_ + i;
        }
    }

    SolveResult run() {
        SolveResult res;
        res.exact = true;
        start_ = Clock::now();

        // phase 1: minimize the artificial sum
        std::vector<Rational> cost1(n_ + m_, Rational(0));
        for (int i = 0; i < m_; ++i) cost1[n_ + i] = 1;
        SolveStatus st = optimize(cost1, /*minimize=*/true, /*allow_artificial=*/true);
        if (st != SolveStatus::Optimal) {
            res.status = st;
            res.iterations = iterations_;
            return res;
        }
        Rational art_sum(0);
        for (int i = 0; i < m_; ++i)
            if (basis_[i] >= n_) art_sum += rhs_[i];
        if (art_sum != 0) {
            res.status = SolveStatus::Infeasible;
            res.iterations = iterations_;
            return res;
        }
        pivot_out_artificials();

        // phase 2: the real objective (artificials pinned by a zero cost and
        // barred from entering)
        std::vector<Rational> cost2(n_ + m_, Rational(0));
        for (int j = 0; j < n_; ++j) cost2[j] = lp_.c[j];
        st = optimize(cost2, /*minimize=*/false, /*allow_artificial=*/false);
        res.status = st;
        res.iterations = iterations_;
        if (st != SolveStatus::Optimal) return res;

        res.x_exact.assign(n_, Rational(0));
        for (int i = 0; i < m_; ++i)
            if (basis_[i] < n_) res.x_exact[basis_[i]] = rhs_[i];
        res.objective_exact = 0;
        for (int j = 0; j < n_; ++j) res.objective_exact += lp_.c[j] * res.x_exact[j];
        res.objective = to_double_nearest(res.objective_exact);
        res.x.resize(n_);
        for (int j = 0; j < n_; ++j) res.x[j] = to_double_nearest(res.x_exact[j]);
        return res;
    }

  private:
    bool out_of_budget() {
        if (iterations_ >= limits_.max_iterations) return true;
        if ((iterations_ & 63) == 0) {
            double secs = std::chrono::duration<double>(Clock::now() - start_).count();
            if (secs > limits_.wall_seconds) return true;
        }
        return false;
    }

    // reduced cost of column j under cost vector c: c_j - c_B . B^-1 A_j;
    // with a full tableau the column already is B^-1 A_j
    Rational reduced_cost(const std::vector<Rational>& cost, int j) {
        Rational rc = cost[j];
        for (int i = 0; i < m_; ++i) {
            if (tab_[i][j] == 0) continue;
            rc -= cost[basis_[i]] * tab_[i][j];
        }
        return rc;
    }

    SolveStatus optimize(const std::vector<Rational>& cost, bool minimize, bool allow_artificial) {
        const int limit = allow_artificial ? n_ + m_ : n_;
        for (;;) {
            if (out_of_budget())
                return iterations_ >= limits_.max_iterations ? SolveStatus::IterationLimit
                                                             : SolveStatus::TimeLimit;
            // Bland: smallest improving index
            int enter = -1;
            for (int j = 0; j < limit; ++j) {
                Rational rc = reduced_cost(cost, j);
                bool improving = minimize ? rc < 0 : rc > 0;
                if (improving) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return SolveStatus::Optimal;

            int leave = -1;
            Rational best_ratio;
            for (int i = 0; i < m_; ++i) {
                if (tab_[i][enter] > 0) {
                    Rational ratio = rhs_[i] / tab_[i][enter];
                    if (leave < 0 || ratio < best_ratio ||
                        (ratio == best_ratio && basis_[i] < basis_[leave])) {
                        leave = i;
                        best_ratio = ratio;
                    }
                }
            }
            if (leave < 0) return SolveStatus::Unbounded;
            pivot(leave, enter);
            ++iterations_;
        }
    }

    void pivot(int row, int col) {
        Rational piv = tab_[row][col];
        for (int j = 0; j < n_ + m_; ++j)
            if (tab_[row][j] != 0) tab_[row][j] /= piv;
        rhs_[row] /= piv;
        for (int i = 0; i < m_; ++i) {
            if (i == row) continue;
            Rational f = tab_[i][col];
            if (f == 0) continue;
            for (int j = 0; j < n_ + m_; ++j)
                if (tab_[row][j] != 0) tab_[i][j] -= f * tab_[row][j];
            rhs_[i] -= f * rhs_[row];
        }
        basis_[row] = col;
    }

    // basic artificials at value zero after phase 1: swap in any structural
    // column with a nonzero tableau entry, or drop the redundant row
    void pivot_out_artificials() {
        for (int i = 0; i < m_; ++i) {
            if (basis_[i] < n_) continue;
            int col = -1;
            for (int j = 0; j < n_; ++j)
                if (tab_[i][j] != 0) {
                    col = j;
                    break;
                }
            if (col >= 0) {
                pivot(i, col);
            }
            // a fully zero row is redundant; the artificial stays basic at 0
        }
    }

    const StandardLP& lp_;
    SolveLimits limits_;
    int m_ = 0, n_ = 0;
    std::vector<std::vector<Rational>> tab_;
    std::vector<Rational> rhs_;
    std::vector<int> basis_;
    long iterations_ = 0;
    Clock::time_point start_;
};

}  // namespace

SolveResult solve_lp_exact(const StandardLP& lp, const SolveLimits& limits) {
    return ExactSimplex(lp, limits).run();
}

}  // namespace fpcert
