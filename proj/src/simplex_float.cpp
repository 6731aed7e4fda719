#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "fpcert/lp.hpp"

namespace fpcert {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr int kRefactorEvery = 256;

struct Entry {
    int row;
    double val;
};

// Sparse LU of the basis, column pivot order = basis position, partial
// row pivoting. Left-looking factorization; refreshed every few dozen pivots
// so the product-form eta chain stays short.
struct SparseLU {
    int m = 0;
    std::vector<std::vector<Entry>> lcols;                   // below-diagonal L, original row ids
    std::vector<std::vector<std::pair<int, double>>> ucols;  // (pivot step j < k, value)
    std::vector<double> diag;
    std::vector<int> prow;  // pivot step -> original row
    std::vector<int> pinv;  // original row -> pivot step

    std::vector<int> qcol;  // factorization step -> basis position

    // returns the basis positions whose columns could not be pivoted
    bool factor(int nrows, const std::vector<std::vector<Entry>>& cols,
                std::vector<int>* failed = nullptr) {
        m = nrows;
        lcols.assign(m, {});
        ucols.assign(m, {});
        diag.assign(m, 0.0);
        prow.assign(m, -1);
        pinv.assign(m, -1);

        if (failed) failed->clear();
        // sparser columns first keeps the fill-in down
        qcol.resize(m);
        for (int i = 0; i < m; ++i) qcol[i] = i;
        std::stable_sort(qcol.begin(), qcol.end(),
                         [&](int a, int b) { return cols[a].size() < cols[b].size(); });

        std::vector<double> work(m, 0.0);
        std::vector<char> reached(m, 0);
        std::vector<int> touched, pivots, stack;
        touched.reserve(256);
        pivots.reserve(256);

        for (int k = 0; k < m; ++k) {
            const auto& col = cols[qcol[k]];
            // symbolic pass: pivots reachable from the column's pattern
            pivots.clear();
            for (const Entry& e : col) {
                work[e.row] = e.val;
                touched.push_back(e.row);
                stack.push_back(e.row);
            }
            while (!stack.empty()) {
                int r = stack.back();
                stack.pop_back();
                int j = pinv[r];
                if (j < 0 || reached[j]) continue;
                reached[j] = 1;
                pivots.push_back(j);
                for (const Entry& le : lcols[j]) stack.push_back(le.row);
            }
            std::sort(pivots.begin(), pivots.end());
            for (int j : pivots) {
                reached[j] = 0;
                double v = work[prow[j]];
                if (v == 0.0) continue;
                ucols[k].push_back({j, v});
                for (const Entry& le : lcols[j]) {
                    if (work[le.row] == 0.0) touched.push_back(le.row);
                    work[le.row] -= v * le.val;
                }
            }
            int piv = -1;
            double best = 0.0;
            for (int r : touched) {
                if (pinv[r] >= 0) continue;
                double a = std::abs(work[r]);
                if (a > best) {
                    best = a;
                    piv = r;
                }
            }
            if (piv < 0 || best < 1e-13) {
                for (int r : touched) work[r] = 0.0;
                touched.clear();
                if (!failed) return false;  // singular basis
                failed->push_back(qcol[k]);
                ucols[k].clear();
                diag[k] = 0.0;
                continue;  // leave the step empty; the caller repairs and retries
            }
            diag[k] = work[piv];
            prow[k] = piv;
            pinv[piv] = k;
            for (int r : touched) {
                if (work[r] != 0.0 && pinv[r] < 0) lcols[k].push_back({r, work[r] / diag[k]});
                work[r] = 0.0;
            }
            touched.clear();
        }
        return true;
    }

    // solve B x = a; a scattered over original rows in y, x by basis position
    void ftran(std::vector<double>& y, std::vector<double>& x) const {
        for (int k = 0; k < m; ++k) {
            double v = y[prow[k]];
            if (v == 0.0) continue;
            for (const Entry& le : lcols[k]) y[le.row] -= v * le.val;
        }
        for (int k = m - 1; k >= 0; --k) {
            double xk = y[prow[k]] / diag[k];
            x[qcol[k]] = xk;
            if (xk == 0.0) continue;
            for (const auto& [j, uv] : ucols[k]) y[prow[j]] -= uv * xk;
        }
        for (int k = 0; k < m; ++k) y[prow[k]] = 0.0;
    }

    // solve y^T B = c^T; c indexed by basis position, y by original row
    void btran(const std::vector<double>& c, std::vector<double>& z, std::vector<double>& y) const {
        for (int k = 0; k < m; ++k) {
            double acc = c[qcol[k]];
            for (const auto& [j, uv] : ucols[k]) acc -= uv * z[j];
            z[k] = acc / diag[k];
        }
        for (int k = m - 1; k >= 0; --k) {
            double acc = z[k];
            for (const Entry& le : lcols[k]) acc -= le.val * y[le.row];
            y[prow[k]] = acc;
        }
    }
};

struct Eta {
    int r;
    double dr;
    std::vector<std::pair<int, double>> d;
};

// Revised simplex with Devex pricing and incrementally maintained reduced
// costs. The LPs this solves are certificate-checked afterwards in exact
// arithmetic, so the solver is free to perturb the right-hand side to escape
// degeneracy: any resulting slack is paid back by the verification step.
class RevisedSimplex {
  public:
    RevisedSimplex(const StandardLP& lp, const SolveLimits& limits) : limits_(limits) {
        m_ = lp.nrows;
        n_ = lp.ncols();
        rowsign_.assign(m_, 1.0);
        b_true_.resize(m_);
        for (int i = 0; i < m_; ++i) {
            double bi = to_double_nearest(lp.b[i]);
            if (bi < 0) {
                rowsign_[i] = -1.0;
                bi = -bi;
            }
            b_true_[i] = bi;
        }
        colptr_.assign(n_ + 1, 0);
        std::size_t nnz = 0;
        for (int j = 0; j < n_; ++j) nnz += lp.cols[j].size();
        rows_.reserve(nnz);
        vals_.reserve(nnz);
        for (int j = 0; j < n_; ++j) {
            for (const auto& [i, v] : lp.cols[j]) {
                rows_.push_back(i);
                vals_.push_back(rowsign_[i] * to_double_nearest(v));
            }
            colptr_[j + 1] = static_cast<int>(rows_.size());
        }
        cost_.resize(n_);
        for (int j = 0; j < n_; ++j) cost_[j] = to_double_nearest(lp.c[j]);

        // row equilibration (divide each row by its largest magnitude)
        rowscale_.assign(m_, 1.0);
        for (std::size_t t = 0; t < rows_.size(); ++t)
            rowscale_[rows_[t]] = std::max(rowscale_[rows_[t]], std::abs(vals_[t]));
        for (std::size_t t = 0; t < rows_.size(); ++t) vals_[t] /= rowscale_[rows_[t]];
        for (int i = 0; i < m_; ++i) b_true_[i] /= rowscale_[i];

        // row-wise mirror for support-driven pricing updates
        rowptr_.assign(m_ + 1, 0);
        for (std::size_t t = 0; t < rows_.size(); ++t) ++rowptr_[rows_[t] + 1];
        for (int i = 0; i < m_; ++i) rowptr_[i + 1] += rowptr_[i];
        colidx_.resize(rows_.size());
        rvals_.resize(rows_.size());
        {
            std::vector<int> cursor(rowptr_.begin(), rowptr_.end() - 1);
            for (int j = 0; j < n_; ++j)
                for (int t = colptr_[j]; t < colptr_[j + 1]; ++t) {
                    int pos = cursor[rows_[t]]++;
                    colidx_[pos] = j;
                    rvals_[pos] = vals_[t];
                }
        }

        // tiny deterministic perturbation against stalling
        double scale = 1.0;
        for (double v : b_true_) scale = std::max(scale, std::abs(v));
        bscale_ = scale;
        uint64_t state = 0x9e3779b97f4a7c15ull;
        b_.resize(m_);
        for (int i = 0; i < m_; ++i) {
            state = state * 6364136223846793005ull + 1442695040888963407ull;
            double u = static_cast<double>(state >> 11) * 0x1.0p-53;
            b_[i] = b_true_[i] + perturb_scale_ * scale * (1.0 + u);
        }
    }

    SolveResult run() {
        SolveResult res;
        start_ = Clock::now();
        basis_.resize(m_);
        where_.assign(n_, -1);
        alpha_.assign(n_, 0.0);
        touched_.reserve(1024);
        for (int i = 0; i < m_; ++i) basis_[i] = n_ + i;
        xb_ = b_;

        if (!refactor()) {
            res.status = SolveStatus::IterationLimit;
            return res;
        }

        phase1_ = true;
        reset_pricing();
        SolveStatus st = iterate();
        if (st != SolveStatus::Optimal) {
            res.status = st;
            res.iterations = iterations_;
            return res;
        }
        double infeas = 0.0;
        for (int i = 0; i < m_; ++i)
            if (basis_[i] >= n_) infeas += std::max(xb_[i], 0.0);
        double bnorm = 1.0;
        for (double v : b_) bnorm = std::max(bnorm, std::abs(v));
        if (infeas > 1e-7 * bnorm) {
            if (trace_)
                std::fprintf(stderr, "[simplex] phase1 ended infeasible: sum %.6g, bnorm %.6g, iters %ld\n",
                             infeas, bnorm, iterations_);
            res.status = SolveStatus::Infeasible;
            res.iterations = iterations_;
            return res;
        }

        phase1_ = false;
        reset_pricing();
        st = iterate();
        res.status = st;
        res.iterations = iterations_;
        if (st != SolveStatus::Optimal) return res;

        // extract the basic values of the perturbed system (the certificate
        // check prices the perturbation exactly; re-solving against the true
        // right-hand side would amplify it through the basis instead)
        if (!refactor()) {
            res.status = SolveStatus::IterationLimit;
            return res;
        }
        // iterative refinement of x_B against the factored basis
        {
            std::vector<double> resid(m_), delta(m_), y(m_);
            for (int pass = 0; pass < 3; ++pass) {
                for (int i = 0; i < m_; ++i) resid[i] = b_[i];
                for (int i = 0; i < m_; ++i) {
                    double xi = xb_[i];
                    if (xi == 0.0) continue;
                    int col = basis_[i];
                    if (col >= n_) {
                        resid[col - n_] -= xi;
                    } else {
                        for (int t = colptr_[col]; t < colptr_[col + 1]; ++t)
                            resid[rows_[t]] -= vals_[t] * xi;
                    }
                }
                std::fill(y.begin(), y.end(), 0.0);
                for (int i = 0; i < m_; ++i) y[i] = resid[i];
                lu_.ftran(y, delta);
                for (int i = 0; i < m_; ++i) xb_[i] += delta[i];
            }
        }
        res.x.assign(n_, 0.0);
        for (int i = 0; i < m_; ++i)
            if (basis_[i] < n_) res.x[basis_[i]] = std::max(xb_[i], 0.0);
        res.objective = 0.0;
        for (int j = 0; j < n_; ++j) res.objective += cost_[j] * res.x[j];
        return res;
    }

  private:
    double cost_of(int col) const {
        if (phase1_) return col >= n_ ? -1.0 : 0.0;
        return col >= n_ ? 0.0 : cost_[col];
    }

    bool refactor() {
        for (int attempt = 0; attempt < 8; ++attempt) {
            std::vector<std::vector<Entry>> bcols(m_);
            for (int i = 0; i < m_; ++i) {
                if (basis_[i] >= n_) {
                    bcols[i].push_back({basis_[i] - n_, 1.0});
                } else {
                    int j = basis_[i];
                    for (int t = colptr_[j]; t < colptr_[j + 1]; ++t)
                        bcols[i].push_back({rows_[t], vals_[t]});
                }
            }
            std::vector<int> failed;
            if (lu_.factor(m_, bcols, &failed) && failed.empty()) {
                etas_.clear();
                eta_entries_ = 0;
                banned_.assign(n_, 0);
                std::vector<double> y(m_, 0.0);
                for (int i = 0; i < m_; ++i) y[i] = b_[i];
                lu_.ftran(y, xb_);
                return true;
            }
            // basis repair: give the unpivotable positions the artificial
            // columns of the rows the factorization never reached
            std::vector<int> freerows;
            for (int r = 0; r < m_; ++r)
                if (lu_.pinv[r] < 0) freerows.push_back(r);
            if (failed.empty() || freerows.size() < failed.size()) return false;
            for (std::size_t i = 0; i < failed.size(); ++i) {
                int pos = failed[i];
                if (basis_[pos] < n_) where_[basis_[pos]] = -1;
                basis_[pos] = n_ + freerows[i];
            }
            pricing_dirty_ = true;
        }
        return false;
    }

    void ftran(std::vector<double>& y, std::vector<double>& x) const {
        lu_.ftran(y, x);
        for (const Eta& e : etas_) {
            double xr = x[e.r] / e.dr;
            if (xr != 0.0)
                for (const auto& [i, di] : e.d) x[i] -= di * xr;
            x[e.r] = xr;
        }
    }

    // y^T B = c^T for a cost vector in basis-position space
    void btran_vec(std::vector<double>& cpos, std::vector<double>& y) {
        for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
            double acc = cpos[it->r];
            for (const auto& [i, di] : it->d) acc -= di * cpos[i];
            cpos[it->r] = acc / it->dr;
        }
        z_.assign(m_, 0.0);
        y.assign(m_, 0.0);
        lu_.btran(cpos, z_, y);
    }

    // full reduced-cost and Devex weight refresh
    void reset_pricing() {
        if (banned_.size() != static_cast<std::size_t>(n_)) banned_.assign(n_, 0);
        std::vector<double> cb(m_);
        for (int i = 0; i < m_; ++i) cb[i] = cost_of(basis_[i]);
        btran_vec(cb, y_);
        rc_.assign(n_, 0.0);
        for (int j = 0; j < n_; ++j) {
            if (where_[j] >= 0) continue;
            double rc = cost_of(j);
            for (int t = colptr_[j]; t < colptr_[j + 1]; ++t) rc -= y_[rows_[t]] * vals_[t];
            rc_[j] = rc;
        }
        devex_.assign(n_, 1.0);
    }

    SolveStatus iterate() {
        std::vector<double> work(m_, 0.0), d(m_), rho(m_), epos(m_);
        long since_reset = 0;

        for (;;) {
            if (iterations_ >= limits_.max_iterations) return SolveStatus::IterationLimit;
            if ((iterations_ & 127) == 0) {
                double secs = std::chrono::duration<double>(Clock::now() - start_).count();
                if (secs > limits_.wall_seconds) return SolveStatus::TimeLimit;
            }

            auto tp0 = Clock::now();
            // Devex: maximize rc^2 / weight among improving columns
            int enter = -1;
            double best_score = 0.0;
            for (int j = 0; j < n_; ++j) {
                if (where_[j] >= 0 || banned_[j]) continue;
                double rc = rc_[j];
                if (rc <= kCostTol) continue;
                double score = rc * rc / devex_[j];
                if (score > best_score) {
                    best_score = score;
                    enter = j;
                }
            }
            t_price_ += std::chrono::duration<double>(Clock::now() - tp0).count();
            if (enter < 0) {
                // confirm optimality against freshly computed reduced costs;
                // columns set aside for unusable pivots stay out (their entry
                // would be numerical noise, and the certificate check prices
                // whatever slack that leaves)
                bool had_bans = false;
                for (int j = 0; j < n_ && !had_bans; ++j) had_bans = banned_[j];
                reset_pricing();
                bool really = true;
                for (int j = 0; j < n_ && really; ++j)
                    if (where_[j] < 0 && !banned_[j] && rc_[j] > 10 * kCostTol) really = false;
                if (really) return SolveStatus::Optimal;
                (void)had_bans;
                continue;
            }

            auto tf0 = Clock::now();
            for (int t = colptr_[enter]; t < colptr_[enter + 1]; ++t) work[rows_[t]] = vals_[t];
            ftran(work, d);
            t_ftran_ += std::chrono::duration<double>(Clock::now() - tf0).count();

            // basic artificials must not move off zero in phase 2
            int leave = -1;
            double theta = 0.0;
            if (!phase1_) {
                double best = kPivotTol;
                for (int i = 0; i < m_; ++i) {
                    if (basis_[i] >= n_ && std::abs(d[i]) > best) {
                        best = std::abs(d[i]);
                        leave = i;
                    }
                }
            }
            if (leave < 0) {
                for (int i = 0; i < m_; ++i) {
                    if (d[i] > kPivotTol) {
                        double xi = std::max(xb_[i], 0.0);
                        double ratio = xi / d[i];
                        if (leave < 0 || ratio < theta - 1e-12 ||
                            (ratio < theta + 1e-12 && basis_[i] < basis_[leave])) {
                            leave = i;
                            theta = ratio;
                        }
                    }
                }
            }
            if (leave < 0) {
                // an apparent ray right after a fresh factorization is real;
                // otherwise suspect drift in the eta chain and retry
                for (int i = 0; i < m_; ++i) d[i] = 0.0;
                if (etas_.empty() && unbounded_retry_ > 0) return SolveStatus::Unbounded;
                ++unbounded_retry_;
                if (!refactor()) return SolveStatus::IterationLimit;
                reset_pricing();
                continue;
            }
            unbounded_retry_ = 0;
            if (std::abs(d[leave]) < 1e-7) {
                // numerically unusable pivot: rebuild the factors once, and if
                // the column still offers nothing better, set it aside until
                // the next full pricing refresh
                for (int i = 0; i < m_; ++i) d[i] = 0.0;
                if (!etas_.empty()) {
                    if (!refactor()) return SolveStatus::IterationLimit;
                    reset_pricing();
                } else {
                    banned_[enter] = 1;
                }
                continue;
            }

            // pivot row out of B^-1 for the rc/devex updates
            auto tb0 = Clock::now();
            std::fill(epos.begin(), epos.end(), 0.0);
            epos[leave] = 1.0;
            btran_vec(epos, rho);
            t_btran_ += std::chrono::duration<double>(Clock::now() - tb0).count();
            auto ta0 = Clock::now();

            const double dr = d[leave];
            const double rcq = rc_[enter];
            const double wq = std::max(devex_[enter], 1.0);
            int old = basis_[leave];

            for (int i = 0; i < m_; ++i) {
                if (i == leave) continue;
                if (d[i] != 0.0) xb_[i] -= theta * d[i];
            }
            xb_[leave] = theta;
            if (old < n_) where_[old] = -1;
            basis_[leave] = enter;
            where_[enter] = leave;

            // alpha_j = rho . a_j drives both updates; only columns meeting
            // the support of rho can change, so accumulate row-wise
            const double rq = rcq / dr;
            touched_.clear();
            for (int i = 0; i < m_; ++i) {
                double ri = rho[i];
                if (ri == 0.0 || std::abs(ri) < 1e-14) continue;
                for (int t = rowptr_[i]; t < rowptr_[i + 1]; ++t) {
                    int j = colidx_[t];
                    if (alpha_[j] == 0.0) touched_.push_back(j);
                    alpha_[j] += ri * rvals_[t];
                }
            }
            for (int j : touched_) {
                double alpha = alpha_[j];
                alpha_[j] = 0.0;
                if (where_[j] >= 0 || alpha == 0.0) continue;
                rc_[j] -= rq * alpha;
                double cand = (alpha / dr) * (alpha / dr) * wq;
                if (cand > devex_[j]) devex_[j] = cand;
            }
            rc_[enter] = 0.0;
            if (old < n_) {
                rc_[old] = -rcq / dr;
                devex_[old] = std::max(wq / (dr * dr), 1.0);
            }

            t_alpha_ += std::chrono::duration<double>(Clock::now() - ta0).count();
            Eta eta;
            eta.r = leave;
            eta.dr = dr;
            for (int i = 0; i < m_; ++i) {
                if (i != leave && std::abs(d[i]) > 1e-13) eta.d.push_back({i, d[i]});
                d[i] = 0.0;
            }
            eta_entries_ += etas_.empty() ? 0 : etas_.back().d.size();
            etas_.push_back(std::move(eta));
            ++iterations_;
            ++since_reset;

            if (static_cast<int>(etas_.size()) >= kRefactorEvery || eta_entries_ > 2000000) {
                auto tr0 = Clock::now();
                if (!refactor()) return SolveStatus::IterationLimit;
                t_refac_ += std::chrono::duration<double>(Clock::now() - tr0).count();
            }
            if (pricing_dirty_) {
                reset_pricing();
                pricing_dirty_ = false;
            }
            // guard against drift in the incremental reduced costs
            if (since_reset >= 3000) {
                reset_pricing();
                since_reset = 0;
            }
            // devex framework reset
            double wmax = 0.0;
            for (int j = 0; j < n_; ++j)
                if (where_[j] < 0) wmax = std::max(wmax, devex_[j]);
            if (wmax > 1e12) devex_.assign(n_, 1.0);

            if (trace_ && (iterations_ % 2000) == 0) {
                double obj = 0.0;
                for (int i = 0; i < m_; ++i) obj += cost_of(basis_[i]) * std::max(xb_[i], 0.0);
                std::fprintf(stderr,
                             "[simplex] phase%d iter=%ld obj=%.12g theta=%.3g "
                             "(price %.1fs ftran %.1fs btran %.1fs alpha %.1fs refac %.1fs)\n",
                             phase1_ ? 1 : 2, iterations_, obj, theta, t_price_, t_ftran_, t_btran_,
                             t_alpha_, t_refac_);
            }
        }
    }

    SolveLimits limits_;
    int m_ = 0, n_ = 0;
    std::vector<double> rowsign_, rowscale_;
    std::vector<double> b_, b_true_;
    std::vector<int> colptr_, rows_;
    std::vector<double> vals_;
    std::vector<int> rowptr_, colidx_;
    std::vector<double> rvals_;
    std::vector<double> alpha_;
    std::vector<int> touched_;
    std::vector<double> cost_;

    std::vector<int> basis_;
    std::vector<int> where_;  // column -> basis position, -1 if nonbasic
    std::vector<double> xb_;
    SparseLU lu_;
    std::vector<Eta> etas_;
    std::vector<double> z_, y_, rc_, devex_;
    std::vector<char> banned_;
    bool phase1_ = true;
    long iterations_ = 0;
    int unbounded_retry_ = 0;
    double t_price_ = 0, t_ftran_ = 0, t_btran_ = 0, t_alpha_ = 0, t_refac_ = 0;
    std::size_t eta_entries_ = 0;
    double bscale_ = 1.0;
    bool pricing_dirty_ = false;
    double perturb_scale_ = std::getenv("FPCERT_SIMPLEX_PERTURB") ? atof(std::getenv("FPCERT_SIMPLEX_PERTURB")) : 0.0;
    Clock::time_point start_;
    bool trace_ = std::getenv("FPCERT_SIMPLEX_TRACE") != nullptr;
};

}  // namespace

SolveResult solve_lp_float(const StandardLP& lp, const SolveLimits& limits) {
    return RevisedSimplex(lp, limits).run();
}

}  // namespace fpcert
