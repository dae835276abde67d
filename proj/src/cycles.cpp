#include "isoperiod/cycles.hpp"

#include "isoperiod/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace isoperiod {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Return-map derivative farther than this from 1 marks an isolated cycle.
constexpr double kLimitDerivTol = 1e-4;

double norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v)
        s += x * x;
    return std::sqrt(s);
}

double distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

/// Golden-section minimum of a unimodal f on [a, b]; writes the argmin.
double golden_min(const std::function<double(double)>& f, double a, double b, int iters,
                  double* argmin) {
    constexpr double gr = 0.6180339887498949; // 1/phi
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iters; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    if (fc < fd) {
        if (argmin)
            *argmin = c;
        return fc;
    }
    if (argmin)
        *argmin = d;
    return fd;
}

struct Nearest {
    double t = 0.0;
    double dist = 0.0;
};

/// Closest point of the cycle to `target`: coarse scan plus golden refine.
Nearest nearest_on_cycle(const CycleRecord& cycle, std::span<const double> target, int coarse) {
    const double T = cycle.period;
    double best = std::numeric_limits<double>::infinity();
    int best_k = 0;
    for (int k = 0; k < coarse; ++k) {
        const double t = T * k / coarse;
        const double d = distance(cycle.at(t), target);
        if (d < best) {
            best = d;
            best_k = k;
        }
    }
    auto f = [&](double t) { return distance(cycle.at(t), target); };
    Nearest out;
    out.dist = golden_min(f, T * (best_k - 1) / coarse, T * (best_k + 1) / coarse, 60, &out.t);
    return out;
}

PointMap affine_map(const AffineInvolution& sigma) {
    return [sigma](std::span<const double> z) { return sigma.apply(z); };
}

} // namespace

const char* to_string(CycleClass c) {
    switch (c) {
    case CycleClass::CenterAnnulus: return "center-annulus";
    case CycleClass::Limit: return "limit";
    case CycleClass::Unknown: return "unknown";
    }
    return "unknown";
}

const char* to_string(SampleStatus s) {
    switch (s) {
    case SampleStatus::Ok: return "ok";
    case SampleStatus::GuardViolation: return "guard-violation";
    case SampleStatus::NoReturn: return "no-return";
    case SampleStatus::CriticalPoint: return "critical-point";
    }
    return "no-return";
}

std::vector<double> CycleRecord::at(double t) const {
    if (!(period > 0.0))
        throw OutOfRange("cycle record has no positive period");
    double s = std::fmod(t, period);
    if (s < 0.0)
        s += period;
    return orbit.state_at(s);
}

CycleRecord measure_period(const EvaluableField& field, std::span<const double> z0v,
                           const CycleOptions& opts) {
    const int n = field.dimension();
    if (static_cast<int>(z0v.size()) != n)
        throw DimensionMismatch("anchor dimension differs from field dimension");

    std::vector<double> z0(z0v.begin(), z0v.end());
    std::vector<double> w0 = field(z0); // guard-checked
    const double speed = norm(w0);
    if (speed < opts.critical_speed)
        throw CriticalPoint("field speed at the anchor is below the critical threshold");
    const double cycle_tol =
        opts.cycle_tol > 0.0 ? opts.cycle_tol : 1e-8 * (1.0 + norm(z0));

    // Section through z0 orthogonal to the flow there. The orbit starts at
    // s = 0 exactly and departs toward s > 0, so the first positive-going
    // crossing is the first same-orientation return.
    std::vector<double> w(w0);
    for (double& x : w)
        x /= speed;
    SectionFn s = [z0, w, n](std::span<const double> z) {
        double d = 0.0;
        for (int i = 0; i < n; ++i)
            d += (z[i] - z0[i]) * w[i];
        return d;
    };

    IntegrateOptions iopts;
    iopts.tol = opts.tol;

    double chunk = std::min(opts.first_chunk, opts.horizon);
    for (;;) {
        Trajectory traj = integrate(field, z0, chunk, iopts);
        auto crossings = find_crossings(traj, s, CrossingDirection::Positive, 0.0,
                                        static_cast<size_t>(opts.max_crossings));
        for (const Crossing& c : crossings) {
            if (distance(c.state, z0) > cycle_tol)
                continue; // same-direction crossing elsewhere on the orbit
            CycleRecord rec;
            rec.anchor = z0;
            rec.period = c.t;
            rec.orbit = integrate(field, z0, c.t, iopts);
            rec.closure_defect = distance(rec.orbit.back(), z0);
            rec.cycle_tol = cycle_tol;
            return rec;
        }
        if (static_cast<int>(crossings.size()) >= opts.max_crossings)
            throw NoReturn("no close return within the crossing cap");
        if (chunk >= opts.horizon)
            throw NoReturn("no return to the anchor within the time horizon");
        chunk = std::min(chunk * 2.0, opts.horizon);
    }
}

std::vector<PeriodSample> period_function(const EvaluableField& field, const Ray& ray,
                                          std::span<const double> radii,
                                          const CycleOptions& opts) {
    const int n = field.dimension();
    if (static_cast<int>(ray.origin.size()) != n || static_cast<int>(ray.direction.size()) != n)
        throw DimensionMismatch("ray dimension differs from field dimension");
    for (size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0))
            throw OutOfRange("radii must be positive");
        if (i > 0 && !(radii[i] > radii[i - 1]))
            throw OutOfRange("radii must be strictly increasing");
    }

    std::vector<PeriodSample> samples;
    samples.reserve(radii.size());
    for (double r : radii) {
        PeriodSample ps;
        ps.r = r;
        ps.point.resize(n);
        for (int i = 0; i < n; ++i)
            ps.point[i] = ray.origin[i] + r * ray.direction[i];
        ps.period = kNaN;
        try {
            ps.period = measure_period(field, ps.point, opts).period;
            ps.status = SampleStatus::Ok;
        } catch (const GuardViolation&) {
            ps.status = SampleStatus::GuardViolation;
        } catch (const CriticalPoint&) {
            ps.status = SampleStatus::CriticalPoint;
        } catch (const Error&) {
            ps.status = SampleStatus::NoReturn;
        }
        samples.push_back(std::move(ps));
    }
    return samples;
}

CycleRecord find_limit_cycle(const EvaluableField& field, std::span<const double> seed,
                             const Section& section, const LimitCycleOptions& opts) {
    if (field.dimension() != 2)
        throw DimensionMismatch("limit-cycle search is implemented for planar fields");
    if (seed.size() != 2 || section.point.size() != 2 || section.normal.size() != 2)
        throw DimensionMismatch("seed and section must be planar");
    const double nn = std::hypot(section.normal[0], section.normal[1]);
    if (nn < 1e-300)
        throw OutOfRange("section normal must be nonzero");
    const std::array<double, 2> nv{section.normal[0] / nn, section.normal[1] / nn};
    const std::array<double, 2> tv{-nv[1], nv[0]}; // direction of the section line

    auto point_at = [&](double u) {
        return std::vector<double>{section.point[0] + u * tv[0], section.point[1] + u * tv[1]};
    };
    auto coord = [&](std::span<const double> z) {
        return (z[0] - section.point[0]) * tv[0] + (z[1] - section.point[1]) * tv[1];
    };
    SectionFn s = [&](std::span<const double> z) {
        return (z[0] - section.point[0]) * nv[0] + (z[1] - section.point[1]) * nv[1];
    };

    const double u0 = coord(seed); // projection of the seed onto the section
    std::vector<double> w0 = field(point_at(u0));
    const double sdot = w0[0] * nv[0] + w0[1] * nv[1];
    if (std::abs(sdot) < opts.cycle.critical_speed)
        throw CriticalPoint("section is not transverse to the field at the seed");
    const CrossingDirection dir =
        sdot > 0.0 ? CrossingDirection::Positive : CrossingDirection::Negative;

    IntegrateOptions iopts;
    iopts.tol = opts.cycle.tol;

    // First-return map P in the section coordinate u.
    auto return_map = [&](double u) {
        std::vector<double> z = point_at(u);
        double chunk = std::min(opts.cycle.first_chunk, opts.cycle.horizon);
        for (;;) {
            Trajectory traj = integrate(field, z, chunk, iopts);
            auto crossings = find_crossings(traj, s, dir, 0.0, 1);
            if (!crossings.empty())
                return coord(crossings.front().state);
            if (chunk >= opts.cycle.horizon)
                throw NoReturn("no return to the section within the time horizon");
            chunk = std::min(chunk * 2.0, opts.cycle.horizon);
        }
    };
    auto g = [&](double u) { return return_map(u) - u; };

    // Secant iteration on g(u) = P(u) - u, with a damped-Picard fallback
    // when the secant step is degenerate or wild.
    double ua = u0, ga = g(ua);
    double u_star = ua, g_star = ga;
    if (std::abs(ga) > opts.fix_tol) {
        double step0 = std::clamp(ga, -0.5 * (1.0 + std::abs(ua)), 0.5 * (1.0 + std::abs(ua)));
        double ub = ua + step0, gb = g(ub);
        int iters = 0;
        while (std::abs(gb) > opts.fix_tol) {
            if (++iters > opts.max_iters)
                throw NoConvergence("return-map fixed-point iteration did not converge");
            const double denom = gb - ga;
            double du = denom != 0.0 ? -gb * (ub - ua) / denom : gb;
            const double cap = 0.5 * (1.0 + std::abs(ub));
            if (!std::isfinite(du) || std::abs(du) > cap)
                du = std::clamp(gb, -cap, cap);
            ua = ub;
            ga = gb;
            ub += du;
            gb = g(ub);
        }
        u_star = ub;
        g_star = gb;
    }

    // Classify through the return-map derivative at the fixed point.
    CycleClass cls = CycleClass::Unknown;
    const double h = opts.deriv_step * (1.0 + std::abs(u_star));
    try {
        const double gp = g(u_star + h);
        const double deriv_dev = std::abs((gp - g_star) / h); // |P'(u*) - 1|
        if (deriv_dev > kLimitDerivTol)
            cls = CycleClass::Limit;
        else if (std::abs(gp) <= opts.annulus_tol)
            cls = CycleClass::CenterAnnulus; // a neighbouring orbit closes too
    } catch (const Error&) {
        // probe failed (guard/horizon); classification stays unknown
    }

    CycleRecord rec = measure_period(field, point_at(u_star), opts.cycle);
    rec.classification = cls;
    return rec;
}

InvarianceReport verify_sigma_invariance(const CycleRecord& cycle, const PointMap& sigma,
                                         double tol) {
    std::vector<double> image = sigma(cycle.anchor);
    if (image.size() != cycle.anchor.size())
        throw DimensionMismatch("sigma changed the state dimension");
    const Nearest near = nearest_on_cycle(cycle, image, 1024);
    InvarianceReport rep;
    rep.tol = tol > 0.0 ? tol : cycle.cycle_tol;
    rep.defect = near.dist;
    rep.invariant = near.dist <= rep.tol;
    return rep;
}

InvarianceReport verify_sigma_invariance(const CycleRecord& cycle, const AffineInvolution& sigma,
                                         double tol) {
    return verify_sigma_invariance(cycle, affine_map(sigma), tol);
}

FixedPointPair fixed_points_on_cycle(const CycleRecord& cycle, const PointMap& sigma,
                                     double tol) {
    const double T = cycle.period;
    const double tol_eff = tol > 0.0 ? tol : 10.0 * cycle.cycle_tol;
    auto g = [&](double t) {
        std::vector<double> z = cycle.at(t);
        return distance(sigma(z), z);
    };

    constexpr int N = 512;
    std::array<double, N> gs{};
    double scale = 0.0;
    for (int k = 0; k < N; ++k) {
        gs[k] = g(T * k / N);
        scale = std::max(scale, norm(cycle.at(T * k / N)));
    }
    const double merge_radius = 1e-3 * (1.0 + scale);

    // Refine every local minimum of the sampled defect, then keep the
    // distinct ones below tolerance.
    struct Minimum {
        double t, defect;
    };
    std::vector<Minimum> minima;
    for (int k = 0; k < N; ++k) {
        const double prev = gs[(k + N - 1) % N], next = gs[(k + 1) % N];
        if (gs[k] > prev || gs[k] > next)
            continue;
        Minimum m{};
        m.defect = golden_min(g, T * (k - 1) / N, T * (k + 1) / N, 60, &m.t);
        if (m.defect > tol_eff)
            continue;
        m.t = std::fmod(m.t + T, T);
        bool duplicate = false;
        for (const Minimum& seen : minima)
            if (distance(cycle.at(seen.t), cycle.at(m.t)) <= merge_radius) {
                duplicate = true;
                break;
            }
        if (!duplicate)
            minima.push_back(m);
    }

    if (minima.empty())
        throw NotFound("no sigma-fixed point on the cycle within tolerance");

    const Minimum best = *std::min_element(
        minima.begin(), minima.end(),
        [](const Minimum& a, const Minimum& b) { return a.defect < b.defect; });

    FixedPointPair pair;
    pair.count = static_cast<int>(minima.size());
    pair.t_first = best.t;
    pair.first = cycle.at(best.t);
    pair.defect_first = best.defect;
    pair.second = cycle.at(best.t + T / 2.0);
    pair.defect_second = distance(sigma(pair.second), pair.second);
    if (pair.defect_second > tol_eff)
        throw NotFound("half-period image of the fixed point is not sigma-fixed");
    if (distance(pair.first, pair.second) <= merge_radius)
        throw NotFound("sigma-fixed points on the cycle are not distinct");
    return pair;
}

FixedPointPair fixed_points_on_cycle(const CycleRecord& cycle, const AffineInvolution& sigma,
                                     double tol) {
    return fixed_points_on_cycle(cycle, affine_map(sigma), tol);
}

double verify_half_period_symmetry(const CycleRecord& cycle, const PointMap& sigma,
                                   int samples) {
    const double T = cycle.period;
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double t = T * k / samples;
        std::vector<double> z = cycle.at(t);
        worst = std::max(worst, distance(sigma(z), cycle.at(t + T / 2.0)));
    }
    return worst;
}

double verify_half_period_symmetry(const CycleRecord& cycle, const AffineInvolution& sigma,
                                   int samples) {
    return verify_half_period_symmetry(cycle, affine_map(sigma), samples);
}

double orbit_distance(const CycleRecord& from, const CycleRecord& to, int samples) {
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        std::vector<double> z = from.at(from.period * k / samples);
        worst = std::max(worst, nearest_on_cycle(to, z, 512).dist);
    }
    return worst;
}

} // namespace isoperiod
