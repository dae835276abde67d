#include "isoperiod/integrate.hpp"

#include "isoperiod/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace isoperiod {

namespace {

// Dormand-Prince 5(4) tableau with the standard free quartic interpolant
// (coefficients as in Hairer, Norsett & Wanner's DOPRI5).
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                 A65 = -5103.0 / 18656;
constexpr double A71 = 35.0 / 384, A73 = 500.0 / 1113, A74 = 125.0 / 192, A75 = -2187.0 / 6784,
                 A76 = 11.0 / 84;
constexpr double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9;
// b - bhat, applied to (k1,k3,...,k7).
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920, E5 = -17253.0 / 339200,
                 E6 = 22.0 / 525, E7 = -1.0 / 40;
constexpr double D1 = -12715105075.0 / 11282082432.0, D3 = 87487479700.0 / 32700410799.0,
                 D4 = -10690763975.0 / 1880347072.0, D5 = 701980252875.0 / 199316789632.0,
                 D6 = -1453857185.0 / 822651844.0, D7 = 69997945.0 / 29380423.0;

void check_finite(std::span<const double> v) {
    for (double x : v)
        if (!std::isfinite(x))
            throw NonFiniteState("non-finite state during integration");
}

double interp_component(double c0, double c1, double c2, double c3, double c4, double th) {
    const double th1 = 1.0 - th;
    return c0 + th * (c1 + th1 * (c2 + th * (c3 + th1 * c4)));
}

} // namespace

size_t Trajectory::step_index(double t) const {
    // times_ has >= 2 entries here; find the step [t_i, t_{i+1}] with t inside.
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    size_t i = static_cast<size_t>(it - times_.begin());
    if (i == 0)
        return 0;
    if (i >= times_.size())
        return times_.size() - 2;
    return i - 1;
}

std::vector<double> Trajectory::state_at(double t) const {
    if (times_.empty())
        throw OutOfRange("empty trajectory");
    const double lo = times_.front(), hi = times_.back();
    const double slack = 1e-12 * (1.0 + std::abs(hi));
    if (t < lo - slack || t > hi + slack)
        throw OutOfRange("time outside trajectory range");
    t = std::clamp(t, lo, hi);
    if (times_.size() == 1)
        return states_.front();
    const size_t i = step_index(t);
    const double h = times_[i + 1] - times_[i];
    const double th = (t - times_[i]) / h;
    const double* c = coeffs_[i].data();
    std::vector<double> out(dim_);
    for (int d = 0; d < dim_; ++d)
        out[d] = interp_component(c[d], c[dim_ + d], c[2 * dim_ + d], c[3 * dim_ + d],
                                  c[4 * dim_ + d], th);
    return out;
}

Trajectory integrate(const EvaluableField& field, std::span<const double> z0, double t_end,
                     const IntegrateOptions& opts) {
    const int n = field.dimension();
    if (static_cast<int>(z0.size()) != n)
        throw DimensionMismatch("initial state dimension differs from field dimension");
    if (t_end <= 0.0)
        throw OutOfRange("integration horizon must be positive");
    const double tol = opts.tol;
    if (!(tol > 0.0))
        throw OutOfRange("integration tolerance must be positive");
    const double atol = opts.atol > 0.0 ? opts.atol : tol;
    const double rtol = opts.rtol > 0.0 ? opts.rtol : tol;
    const double hmax = opts.hmax > 0.0 ? std::min(opts.hmax, t_end) : t_end;

    if (!field.guard_ok(z0))
        throw GuardViolation("initial point rejected by domain guard",
                             std::vector<double>(z0.begin(), z0.end()));

    Trajectory traj;
    traj.dim_ = n;
    traj.times_.push_back(0.0);
    traj.states_.emplace_back(z0.begin(), z0.end());

    std::vector<double> y(z0.begin(), z0.end());
    std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n);

    auto rhs = [&](std::span<const double> z, std::span<double> out) { field.eval(z, out); };

    check_finite(y);
    rhs(y, k1);
    check_finite(k1);

    // Initial step estimate (two-phase heuristic).
    double h = opts.h0;
    if (h <= 0.0) {
        double d0 = 0.0, d1 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double sc = atol + rtol * std::abs(y[i]);
            d0 += (y[i] / sc) * (y[i] / sc);
            d1 += (k1[i] / sc) * (k1[i] / sc);
        }
        d0 = std::sqrt(d0 / n);
        d1 = std::sqrt(d1 / n);
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h0 = std::min(h0, hmax);
        bool probed = false;
        double d2 = 0.0;
        try {
            for (int i = 0; i < n; ++i)
                ytmp[i] = y[i] + h0 * k1[i];
            rhs(ytmp, k2);
            for (int i = 0; i < n; ++i) {
                const double sc = atol + rtol * std::abs(y[i]);
                const double df = (k2[i] - k1[i]) / sc;
                d2 += df * df;
            }
            d2 = std::sqrt(d2 / n) / h0;
            probed = true;
        } catch (const GuardViolation&) {
            // probe left the domain; fall back to the crude estimate
        }
        double h1;
        if (!probed || std::max(d1, d2) <= 1e-15)
            h1 = std::max(1e-6, h0 * 1e-3);
        else
            h1 = std::pow(0.01 / std::max(d1, d2), 0.2);
        h = std::min({100.0 * h0, h1, hmax});
    }
    h = std::min(h, hmax);

    double t = 0.0;
    double max_errnorm = 0.0;
    long nsteps = 0;
    bool rejected_last = false;

    while (t < t_end) {
        if (++nsteps > opts.max_steps)
            throw Error("integration step budget exhausted");
        if (h < 1e-14 * std::max(1.0, std::abs(t)))
            throw StepSizeUnderflow("step size underflow during integration");
        if (t + h > t_end)
            h = t_end - t;

        bool guard_hit = false;
        std::vector<double> guard_point;
        double errnorm = 0.0;
        try {
            for (int i = 0; i < n; ++i)
                ytmp[i] = y[i] + h * A21 * k1[i];
            rhs(ytmp, k2);
            for (int i = 0; i < n; ++i)
                ytmp[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
            rhs(ytmp, k3);
            for (int i = 0; i < n; ++i)
                ytmp[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
            rhs(ytmp, k4);
            for (int i = 0; i < n; ++i)
                ytmp[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
            rhs(ytmp, k5);
            for (int i = 0; i < n; ++i)
                ytmp[i] = y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] +
                                      A65 * k5[i]);
            rhs(ytmp, k6);
            for (int i = 0; i < n; ++i)
                ynew[i] = y[i] + h * (A71 * k1[i] + A73 * k3[i] + A74 * k4[i] + A75 * k5[i] +
                                      A76 * k6[i]);
            rhs(ynew, k7); // FSAL stage
            check_finite(ynew);

            for (int i = 0; i < n; ++i) {
                const double e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] +
                                      E6 * k6[i] + E7 * k7[i]);
                const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
                errnorm += (e / sc) * (e / sc);
            }
            errnorm = std::sqrt(errnorm / n);
        } catch (const GuardViolation& g) {
            guard_hit = true;
            guard_point = g.point;
        }

        if (guard_hit) {
            // Shrink toward the domain boundary; give up below underflow.
            if (h < 1e-12 * std::max(1.0, std::abs(t))) {
                if (opts.stop_on_guard) {
                    traj.termination_ = Termination::GuardStop;
                    traj.achieved_tol_ = tol * std::max(max_errnorm, 1e-16);
                    return traj;
                }
                throw GuardViolation("trajectory reached the domain boundary",
                                     std::move(guard_point));
            }
            h *= 0.25;
            rejected_last = true;
            continue;
        }

        if (errnorm <= 1.0) {
            // Accept; build the dense-output coefficients for this step.
            std::vector<double> c(5 * n);
            for (int i = 0; i < n; ++i) {
                const double dy = ynew[i] - y[i];
                const double bspl = h * k1[i] - dy;
                c[i] = y[i];
                c[n + i] = dy;
                c[2 * n + i] = bspl;
                c[3 * n + i] = dy - h * k7[i] - bspl;
                c[4 * n + i] = h * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] + D5 * k5[i] +
                                    D6 * k6[i] + D7 * k7[i]);
            }
            t += h;
            y = ynew;
            k1 = k7;
            traj.times_.push_back(t);
            traj.states_.push_back(y);
            traj.coeffs_.push_back(std::move(c));
            max_errnorm = std::max(max_errnorm, errnorm);

            double fac = 0.9 * std::pow(std::max(errnorm, 1e-16), -0.2);
            fac = std::clamp(fac, 0.2, rejected_last ? 1.0 : 10.0);
            h = std::min(h * fac, hmax);
            rejected_last = false;
        } else {
            double fac = 0.9 * std::pow(errnorm, -0.2);
            h *= std::clamp(fac, 0.1, 0.9);
            rejected_last = true;
        }
    }

    traj.termination_ = Termination::Completed;
    traj.achieved_tol_ = tol * std::max(max_errnorm, 1e-16);
    return traj;
}

namespace {

double inf_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v)
        m = std::max(m, std::abs(x));
    return m;
}

bool direction_matches(CrossingDirection dir, double s_before, double s_after) {
    switch (dir) {
    case CrossingDirection::Positive: return s_before < 0.0 && s_after >= 0.0;
    case CrossingDirection::Negative: return s_before > 0.0 && s_after <= 0.0;
    case CrossingDirection::Any:
        return (s_before < 0.0 && s_after >= 0.0) || (s_before > 0.0 && s_after <= 0.0);
    }
    return false;
}

// Root of g(t) = s(z(t)) inside [ta, tb] with a sign change, by secant
// steps safeguarded by bisection.
Crossing refine_root(const Trajectory& traj, const SectionFn& s, double ta, double tb, double sa,
                     double sb) {
    double t_lo = ta, t_hi = tb, s_lo = sa, s_hi = sb;
    double t_best = tb;
    std::vector<double> z_best = traj.state_at(tb);
    double s_best = sb;
    if (std::abs(s_best) <= 1e-13 * (1.0 + inf_norm(z_best)))
        return Crossing{t_best, std::move(z_best)};

    for (int it = 0; it < 128; ++it) {
        double t_mid;
        // Secant estimate, rejected when it falls outside the bracket.
        if (s_hi != s_lo) {
            t_mid = t_hi - s_hi * (t_hi - t_lo) / (s_hi - s_lo);
            if (!(t_mid > t_lo && t_mid < t_hi))
                t_mid = 0.5 * (t_lo + t_hi);
        } else {
            t_mid = 0.5 * (t_lo + t_hi);
        }
        std::vector<double> z_mid = traj.state_at(t_mid);
        const double s_mid = s(z_mid);
        if (std::abs(s_mid) < std::abs(s_best)) {
            s_best = s_mid;
            t_best = t_mid;
            z_best = z_mid;
        }
        const double scale = 1.0 + inf_norm(z_mid);
        if (std::abs(s_mid) <= 1e-13 * scale)
            break;
        if ((s_lo < 0.0) == (s_mid < 0.0)) {
            t_lo = t_mid;
            s_lo = s_mid;
        } else {
            t_hi = t_mid;
            s_hi = s_mid;
        }
        if (t_hi - t_lo <= 4.0 * std::numeric_limits<double>::epsilon() *
                               std::max(1.0, std::abs(t_hi)))
            break;
    }
    return Crossing{t_best, std::move(z_best)};
}

} // namespace

std::vector<Crossing> find_crossings(const Trajectory& traj, const SectionFn& s,
                                     CrossingDirection direction, double t_from,
                                     size_t max_count) {
    std::vector<Crossing> found;
    const auto& times = traj.times();
    if (times.size() < 2 || max_count == 0)
        return found;

    // Subdivide each accepted step so sign changes shorter than a step are
    // still bracketed; 8 panels is enough for the smooth fields handled here.
    constexpr int kPanels = 8;
    double t_prev = std::max(t_from, times.front());
    if (t_prev >= times.back())
        return found;
    double s_prev = s(traj.state_at(t_prev));

    for (size_t step = 0; step + 1 < times.size(); ++step) {
        const double t0 = times[step], t1 = times[step + 1];
        if (t1 <= t_prev)
            continue;
        for (int p = 1; p <= kPanels; ++p) {
            const double tq = (p == kPanels) ? t1 : t0 + (t1 - t0) * p / kPanels;
            if (tq <= t_prev)
                continue;
            const double sq = s(traj.state_at(tq));
            // Strict sign change only: a sample sitting exactly on the
            // section (s == 0) closes the bracket ending there and does not
            // open a spurious one.
            if ((s_prev < 0.0 && sq >= 0.0) || (s_prev > 0.0 && sq <= 0.0)) {
                if (direction_matches(direction, s_prev, sq)) {
                    Crossing c = refine_root(traj, s, t_prev, tq, s_prev, sq);
                    if (c.t > t_from) {
                        found.push_back(std::move(c));
                        if (found.size() >= max_count)
                            return found;
                    }
                }
            }
            t_prev = tq;
            s_prev = sq;
        }
    }
    return found;
}

Crossing locate_crossing(const Trajectory& traj, const SectionFn& s, CrossingDirection direction,
                         double t_from) {
    auto found = find_crossings(traj, s, direction, t_from, 1);
    if (found.empty())
        throw NoCrossing("no section crossing in the integrated time range");
    return std::move(found.front());
}

} // namespace isoperiod
