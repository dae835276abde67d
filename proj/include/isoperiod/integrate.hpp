#pragma once

#include "isoperiod/field.hpp"

#include <functional>
#include <span>
#include <vector>

namespace isoperiod {

struct IntegrateOptions {
    /// Mixed error control: per component, |err_i| <= atol + rtol*|z_i|,
    /// with atol = rtol = tol unless overridden.
    double tol = 1e-12;
    double atol = -1.0; // <= 0: use tol
    double rtol = -1.0; // <= 0: use tol
    double hmax = 0.0;  // 0: no cap beyond the interval length
    double h0 = 0.0;    // 0: automatic initial step
    long max_steps = 10'000'000;
    /// On a guard hit, return the trajectory up to the last valid node
    /// instead of throwing GuardViolation.
    bool stop_on_guard = false;
};

enum class Termination { Completed, GuardStop };

/// Solution of dz/dt = W(z) on [0, t_end] with per-step dense output
/// (quartic interpolant of the embedded pair). Immutable once returned.
class Trajectory {
public:
    double t_begin() const { return 0.0; }
    double t_end() const { return times_.empty() ? 0.0 : times_.back(); }

    /// Accepted node times, strictly increasing, starting at 0.
    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& state(size_t node) const { return states_[node]; }
    const std::vector<double>& front() const { return states_.front(); }
    const std::vector<double>& back() const { return states_.back(); }
    size_t step_count() const { return times_.empty() ? 0 : times_.size() - 1; }

    /// Dense-output state at any t in [0, t_end]; throws OutOfRange.
    std::vector<double> state_at(double t) const;

    Termination termination() const { return termination_; }
    /// tol * (largest accepted scaled error norm): the local error bound
    /// actually realized.
    double achieved_tol() const { return achieved_tol_; }
    int dimension() const { return dim_; }

private:
    friend Trajectory integrate(const EvaluableField&, std::span<const double>, double,
                                const IntegrateOptions&);

    int dim_ = 0;
    std::vector<double> times_;
    std::vector<std::vector<double>> states_;
    // Interpolant coefficients per step, dim values each:
    // z(theta) = c0 + theta*(c1 + (1-theta)*(c2 + theta*(c3 + (1-theta)*c4))).
    std::vector<std::vector<double>> coeffs_;
    Termination termination_ = Termination::Completed;
    double achieved_tol_ = 0.0;

    size_t step_index(double t) const;
};

/// Adaptive Dormand-Prince 5(4) integration from z0 over [0, t_end].
/// Throws GuardViolation (unless opts.stop_on_guard), StepSizeUnderflow,
/// NonFiniteState.
Trajectory integrate(const EvaluableField& field, std::span<const double> z0, double t_end,
                     const IntegrateOptions& opts = {});

/// Dense-output query as a free function; same as traj.state_at(t).
inline std::vector<double> flow_at(const Trajectory& traj, double t) { return traj.state_at(t); }

enum class CrossingDirection { Positive, Negative, Any };

using SectionFn = std::function<double(std::span<const double>)>;

struct Crossing {
    double t = 0.0;
    std::vector<double> state;
};

/// First time t > t_from where s(z(t)) crosses zero in the requested
/// direction, refined on the dense output by bracketing with secant and
/// bisection until |s| <= 1e-13 * (1 + |z|_inf). Throws NoCrossing.
Crossing locate_crossing(const Trajectory& traj, const SectionFn& s, CrossingDirection direction,
                         double t_from);

/// All such crossings in time order, at most max_count of them.
std::vector<Crossing> find_crossings(const Trajectory& traj, const SectionFn& s,
                                     CrossingDirection direction, double t_from,
                                     size_t max_count);

} // namespace isoperiod
