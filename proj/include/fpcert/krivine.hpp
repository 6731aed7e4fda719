#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fpcert/lp.hpp"
#include "fpcert/polynomial.hpp"
#include "fpcert/rounding.hpp"

namespace fpcert {

struct RationalBodyUnsupported : std::runtime_error {
    RationalBodyUnsupported()
        : std::runtime_error("the Krivine-Stengle engine handles polynomial bodies only") {}
};

// Constraint system 0 <= g_i <= 1 over the unit box: user constraints scaled
// by an interval upper bound, then the coordinate polynomials appended.
struct NormalizedConstraints {
    std::vector<Polynomial<Rational>> g;
    int user_count = 0;
    std::vector<Rational> scale_log;  // divisor applied to each user constraint

    int p() const { return static_cast<int>(g.size()); }
};

NormalizedConstraints normalize_constraints(const Program& prog);

// The m affine maps g_{p+j}(e) = 1/2 + e_j/2 carrying e_j in [-1,1] to [0,1],
// as polynomials over the m error variables.
std::vector<Polynomial<Rational>> build_error_box_constraints(int m);

// Lemma-1 block pattern: I_j = {1..n, n+j}, J_j = {1..p, p+j}.
struct SparsityPattern {
    int n = 0, p = 0, m = 0;
    std::vector<int> var_block(int j) const;
    std::vector<int> constraint_block(int j) const;
    bool running_intersection_holds() const;
};

inline SparsityPattern make_sparsity_pattern(int n, int p, int m) { return {n, p, m}; }

enum class BoundDirection { Lower, Upper };

// Monomial row of the sparse relaxation: an x-part together with the single
// error variable (and its power) the monomial may carry.
struct RowKey {
    MultiIndex x;
    int block = -1;     // -1: pure-x monomial
    uint32_t edeg = 0;  // >= 1 iff block >= 0

    bool operator==(const RowKey& o) const { return x == o.x && block == o.block && edeg == o.edeg; }
};

struct RowKeyLess {
    bool operator()(const RowKey& a, const RowKey& b) const {
        GradedLexLess lex;
        if (a.block != b.block) return a.block < b.block;
        if (a.edeg != b.edeg) return a.edeg < b.edeg;
        if (!(a.x == b.x)) return lex(a.x, b.x);
        return false;
    }
};

struct LPColumnMeta {
    int block = 0;
    MultiIndex alpha;  // length p+1, last entry = error-map power
    MultiIndex beta;
};

// Assembled coefficient-matching system shared by both bound directions.
struct KSAssembly {
    int n = 0, p = 0, m = 0, order = 0;
    bool dense = false;
    std::vector<RowKey> rows;
    std::vector<MultiIndex> dense_rows;  // dense route: full (x, e) exponents
    std::vector<Rational> lprime;        // coefficient of l' per row
    std::vector<std::vector<std::pair<int, Rational>>> lambda_cols;
    std::vector<LPColumnMeta> meta;

    std::size_t variables() const { return lambda_cols.size() + 1; }  // lambdas and t
    std::size_t equations() const { return dense ? dense_rows.size() : rows.size(); }
    int zero_row = -1;  // row of the constant monomial (t's row)
};

// LP (coefficient matching of l' - t, or t - l', against sum_j phi_j) with
// the Lemma-1 sparsity pattern; set dense=true for the single-block
// cross-check relaxation over all of (x, e).
KSAssembly assemble_lp(const std::vector<Polynomial<Rational>>& s, const NormalizedConstraints& nc,
                       int order, bool dense = false);

StandardLP to_standard(const KSAssembly& asmb, BoundDirection dir);

struct KSCertificate {
    BoundDirection direction = BoundDirection::Lower;
    Rational t;
    std::vector<std::pair<int, Rational>> lambdas;  // column -> weight, lambda >= 0
};

struct VerifiedBound {
    Rational t_raw;
    Rational t_certified;
    Rational residual_l1;
    bool exact = false;
};

// Exact-rational recheck of the certificate identity; a nonzero residual is
// absorbed into the bound (every monomial has magnitude <= 1 over the unit
// domain), so the certified value is sound regardless of solver numerics.
VerifiedBound verify_certificate(const KSCertificate& cert, const KSAssembly& asmb);

enum class LPBackend { Auto, Exact, Float };

struct KSBound {
    SolveStatus status = SolveStatus::IterationLimit;
    Rational value;          // certified bound on l' in the requested direction
    KSCertificate certificate;
    VerifiedBound verification;
    bool solved_exactly = false;
    long iterations = 0;
};

KSBound ks_bound(const KSAssembly& asmb, BoundDirection dir, LPBackend backend,
                 const SolveLimits& limits = {});

struct FpKriStenOptions {
    std::optional<int> order;
    LPBackend backend = LPBackend::Auto;
    SolveLimits limits;
    bool also_dense = false;  // assemble the dense cross-check as well
};

struct KSOutcome {
    SolveStatus status = SolveStatus::Optimal;
    Rational lower;  // certified bounds on l'
    Rational upper;
    RatInterval linear_interval{Rational(0)};
    RatInterval h{Rational(0)};
    RatInterval total_interval{Rational(0)};
    Rational total;
    int order = 0;
    std::size_t lp_variables = 0;
    std::size_t lp_equations = 0;
    bool exact_lp = false;
    Rational residual_l1;
    long iterations = 0;
};

KSOutcome fpkristen_run(const ErrorForm& ef, const FpKriStenOptions& opt = {});

// Textual export of one direction in industry LP-file syntax, and the reader
// used by the round-trip tests.
std::string write_lp_text(const KSAssembly& asmb, BoundDirection dir);
StandardLP parse_lp_text(const std::string& text, std::vector<std::string>* names = nullptr);

}  // namespace fpcert
