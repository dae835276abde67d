#pragma once

#include "isoperiod/integrate.hpp"
#include "isoperiod/involution.hpp"

#include <functional>
#include <span>
#include <vector>

namespace isoperiod {

enum class CycleClass { CenterAnnulus, Limit, Unknown };

const char* to_string(CycleClass c);

/// A measured closed orbit: anchor point, minimal period, dense orbit
/// over one period, and how well the orbit closes up.
struct CycleRecord {
    std::vector<double> anchor;
    double period = 0.0;
    Trajectory orbit; // dense trajectory over [0, period]
    double closure_defect = 0.0; // |phi(period, anchor) - anchor|
    CycleClass classification = CycleClass::Unknown;
    double cycle_tol = 0.0; // closure tolerance the measurement used

    /// Dense state with t wrapped periodically into [0, period].
    std::vector<double> at(double t) const;
};

struct CycleOptions {
    double tol = 1e-12;      // integrator tolerance
    double cycle_tol = -1.0; // <= 0: default 1e-8 * (1 + |z0|)
    double horizon = 1e4;    // give up (NoReturn) past this total time
    int max_crossings = 9;   // same-direction crossings examined for a close return
    double critical_speed = 1e-12; // |W(z0)| below this is a critical point
    double first_chunk = 32.0;     // initial integration window, doubled as needed
};

/// Minimal period of the cycle through z0: place a section through z0
/// orthogonal to W(z0), integrate to the first same-orientation return
/// whose state lies within the cycle tolerance of z0, then rebuild the
/// orbit densely over [0, T].
///
/// Throws CriticalPoint (|W(z0)| < critical_speed), NoReturn (horizon or
/// crossing cap exhausted), GuardViolation (orbit leaves the domain).
CycleRecord measure_period(const EvaluableField& field, std::span<const double> z0,
                           const CycleOptions& opts = {});

enum class SampleStatus { Ok, GuardViolation, NoReturn, CriticalPoint };

const char* to_string(SampleStatus s);

struct PeriodSample {
    double r = 0.0;            // parameter along the ray
    std::vector<double> point; // initial point origin + r * direction
    double period = 0.0;       // NaN unless status == Ok
    SampleStatus status = SampleStatus::NoReturn;
};

struct Ray {
    std::vector<double> origin;
    std::vector<double> direction;
};

/// Period function sampled along a ray: one sample per radius, failures
/// recorded per sample without aborting the sweep.
std::vector<PeriodSample> period_function(const EvaluableField& field, const Ray& ray,
                                          std::span<const double> radii,
                                          const CycleOptions& opts = {});

/// Poincare section: the line (hyperplane) through `point` orthogonal to
/// `normal`.
struct Section {
    std::vector<double> point;
    std::vector<double> normal;
};

struct LimitCycleOptions {
    CycleOptions cycle;
    double fix_tol = 1e-10;    // |P(u) - u| at the accepted fixed point
    int max_iters = 200;       // secant iteration cap (NoConvergence beyond)
    double deriv_step = 1e-5;  // relative offset for the return-map derivative
    double annulus_tol = 1e-8; // nearby return counts as closed below this
};

/// Fixed point of the Poincare return map on the given section (planar
/// fields only): secant iteration on the section coordinate starting from
/// the seed's projection. The result is classified through the return-map
/// derivative: far from 1 -> limit cycle; near 1 with nearby orbits also
/// closing -> center-annulus cycle; otherwise unknown.
///
/// Throws NoConvergence, NoReturn, GuardViolation, DimensionMismatch.
CycleRecord find_limit_cycle(const EvaluableField& field, std::span<const double> seed,
                             const Section& section, const LimitCycleOptions& opts = {});

/// Black-box point transformation used by the numeric symmetry checks.
using PointMap = std::function<std::vector<double>(std::span<const double>)>;

struct InvarianceReport {
    bool invariant = false;
    double defect = 0.0; // min over the orbit of |sigma(anchor) - phi(t, anchor)|
    double tol = 0.0;
};

/// sigma(gamma) = gamma test: the image of the anchor must land back on
/// the orbit (a cycle contains two related points iff it is invariant).
/// Defaults tol to the record's cycle tolerance.
InvarianceReport verify_sigma_invariance(const CycleRecord& cycle, const PointMap& sigma,
                                         double tol = -1.0);
InvarianceReport verify_sigma_invariance(const CycleRecord& cycle, const AffineInvolution& sigma,
                                         double tol = -1.0);

struct FixedPointPair {
    std::vector<double> first;  // z* with sigma(z*) = z*
    std::vector<double> second; // phi(T/2, z*), also sigma-fixed
    double t_first = 0.0;       // orbit time of `first`
    double defect_first = 0.0;  // |sigma(first) - first|
    double defect_second = 0.0; // |sigma(second) - second|
    int count = 0;              // distinct sigma-fixed points found on the cycle
};

/// The two sigma-fixed points a sigma-invariant cycle of a reversible
/// system must carry, located by minimizing |sigma(z) - z| along the
/// dense orbit and verified to be swapped by the half-period flow.
/// Defaults tol to 10x the record's cycle tolerance. Throws NotFound
/// (e.g. for symmetric systems, whose cycles carry no fixed points).
FixedPointPair fixed_points_on_cycle(const CycleRecord& cycle, const PointMap& sigma,
                                     double tol = -1.0);
FixedPointPair fixed_points_on_cycle(const CycleRecord& cycle, const AffineInvolution& sigma,
                                     double tol = -1.0);

/// Half-period test for symmetric systems: max over dense samples z on
/// the cycle of |sigma(z) - phi(T/2, z)|.
double verify_half_period_symmetry(const CycleRecord& cycle, const PointMap& sigma,
                                   int samples = 64);
double verify_half_period_symmetry(const CycleRecord& cycle, const AffineInvolution& sigma,
                                   int samples = 64);

/// One-sided orbit distance: max over samples of `from` of the distance
/// to the orbit of `to`. Symmetrize by calling twice.
double orbit_distance(const CycleRecord& from, const CycleRecord& to, int samples = 256);

} // namespace isoperiod
