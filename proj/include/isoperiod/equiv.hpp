#pragma once

#include "isoperiod/cycles.hpp"
#include "isoperiod/symmetry.hpp"

#include <optional>
#include <string>
#include <vector>

namespace isoperiod {

/// Hypotheses of the equal-period theorems, always recomputed from the
/// fields and never trusted from input.
struct HypothesisReport {
    /// Verified symmetry kind of the base field under sigma (a declared
    /// kind wins when it verifies; Neither when no condition holds).
    SymmetryKind kind;
    /// Residuals of the checked symmetry condition (empty iff it holds).
    SymmetryReport symmetry;
    /// Scaler condition alpha + alpha o sigma = 2 alpha (alpha o sigma).
    CompatibilityReport compatibility;

    bool hold() const { return kind != SymmetryKind::Neither && compatibility.compatible; }
};

/// A base system z' = V(z) together with its reparametrized companion
/// z' = alpha(z) V(z) and the involution tying them.
struct SystemPair {
    std::string name;
    std::vector<Poly> base;
    RationalFn alpha;
    AffineInvolution sigma;
    SymmetryKind declared_kind;
    /// Exact polynomial form of alpha*V when available (corollary pairs,
    /// or alpha with constant denominator); otherwise the scaled field is
    /// evaluated as a guarded quotient.
    std::optional<std::vector<Poly>> scaled_poly;
    HypothesisReport hypotheses;

    EvaluableField base_field() const;
    EvaluableField scaled_field(double den_floor = 1e-9) const;
};

/// Builds the pair and its hypothesis report. Nothing is refused: failed
/// hypotheses are recorded so counterexample experiments can run.
SystemPair make_pair(const std::vector<Poly>& V, const RationalFn& alpha,
                     const AffineInvolution& sigma,
                     std::optional<SymmetryKind> declared = std::nullopt,
                     std::string name = {});

/// The corollary construction: base V*(delta^2 - 1) against scaled
/// V*(delta - 1), related by alpha = 1/(1 + delta). The identity
/// base*alpha = scaled is verified exactly. Throws NotSigmaOdd.
SystemPair corollary_pair(const std::vector<Poly>& V, const Poly& delta,
                          const AffineInvolution& sigma, SymmetryKind kind,
                          std::string name = {});

struct GuardStatus {
    bool ok = false;
    /// Minimum of 1 + delta over the sampled orbit (delta form), or the
    /// minimum of |alpha| (alpha form).
    double min_value = 0.0;
};

/// Sign condition along a concrete cycle: 1 + delta must stay positive
/// (above 1e-9), or alpha must keep one strict sign.
GuardStatus guard_cycle(const CycleRecord& cycle, const Poly& delta, int samples = 512);
GuardStatus guard_cycle(const CycleRecord& cycle, const RationalFn& alpha, int samples = 512);

struct ComparisonRow {
    double r = 0.0;
    std::vector<double> point;
    double T_base = 0.0;
    double T_scaled = 0.0;
    double abs_dT = 0.0;
    double rel_dT = 0.0; // abs_dT / T_base
    SampleStatus base_status = SampleStatus::NoReturn;
    SampleStatus scaled_status = SampleStatus::NoReturn;
    bool guard_known = false; // guard evaluated (base cycle measured)
    bool guard_ok = false;
    double guard_min = 0.0;
    bool invariant_known = false;
    bool invariant = false;
    double invariance_defect = 0.0;
    bool in_summary = false;
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;
    /// Max relative period difference over rows whose cycles measured,
    /// guard passed and sigma-invariance held; NaN when no row qualifies.
    double max_rel_dT;
    int counted_rows;
    HypothesisReport hypotheses;

    /// CSV with the fixed header r,T_base,T_scaled,abs_dT,rel_dT,guard,invariant.
    std::string to_csv() const;
};

struct CompareOptions {
    CycleOptions cycle;
    int guard_samples = 512;
};

/// Measures both periods from the same anchor per radius, checks the
/// per-cycle guard and sigma-invariance, and aggregates the maximal
/// relative period difference. Row-level failures never abort the sweep.
ComparisonReport compare_periods(const SystemPair& pair, const Ray& ray,
                                 std::span<const double> radii,
                                 const CompareOptions& opts = {});

/// One comparison per (sigma_i, delta_i) reduction of the same base
/// field; each delta_i must be sigma_i-odd (NotSigmaOdd otherwise).
std::vector<ComparisonReport> double_reversibility_suite(
    const std::vector<Poly>& V, const std::vector<AffineInvolution>& sigmas,
    const std::vector<Poly>& deltas, const Ray& ray, std::span<const double> radii,
    const CompareOptions& opts = {});

} // namespace isoperiod
