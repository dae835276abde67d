#include "isoperiod/equiv.hpp"

#include "isoperiod/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace isoperiod {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Sign conditions must clear this margin on the sampled orbit.
constexpr double kGuardFloor = 1e-9;

std::string fmt15(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

void require_dimensions(const std::vector<Poly>& V, const AffineInvolution& sigma) {
    const int n = sigma.dimension();
    if (static_cast<int>(V.size()) != n)
        throw DimensionMismatch("field component count differs from the space dimension");
    for (const Poly& p : V)
        if (p.nvars() != n)
            throw DimensionMismatch("field component has the wrong variable count");
}

SampleStatus status_of(const Error& e) {
    if (dynamic_cast<const GuardViolation*>(&e))
        return SampleStatus::GuardViolation;
    if (dynamic_cast<const CriticalPoint*>(&e))
        return SampleStatus::CriticalPoint;
    return SampleStatus::NoReturn;
}

} // namespace

EvaluableField SystemPair::base_field() const {
    return make_field(base, name.empty() ? std::string("base") : name + ":base");
}

EvaluableField SystemPair::scaled_field(double den_floor) const {
    const std::string label = name.empty() ? std::string("scaled") : name + ":scaled";
    if (scaled_poly)
        return make_field(*scaled_poly, label);
    return make_scaled_field(base, alpha, den_floor, label);
}

SystemPair make_pair(const std::vector<Poly>& V, const RationalFn& alpha,
                     const AffineInvolution& sigma, std::optional<SymmetryKind> declared,
                     std::string name) {
    require_dimensions(V, sigma);
    if (alpha.nvars() != sigma.dimension())
        throw DimensionMismatch("scaler variable count differs from the space dimension");

    SymmetryReport rev = check_reversible(V, sigma);
    SymmetryReport symm = check_symmetric(V, sigma);
    CompatibilityReport compat = check_compatible(alpha, sigma);

    // A declared kind wins when it verifies; otherwise fall back to
    // whichever condition holds; with neither, keep the residuals of the
    // declared (or the reversibility) check for reporting.
    SymmetryKind kind = SymmetryKind::Neither;
    const SymmetryReport* chosen = &rev;
    if (declared == SymmetryKind::Reversible && rev.holds()) {
        kind = SymmetryKind::Reversible;
    } else if (declared == SymmetryKind::Symmetric && symm.holds()) {
        kind = SymmetryKind::Symmetric;
        chosen = &symm;
    } else if (rev.holds()) {
        kind = SymmetryKind::Reversible;
    } else if (symm.holds()) {
        kind = SymmetryKind::Symmetric;
        chosen = &symm;
    } else if (declared == SymmetryKind::Symmetric) {
        chosen = &symm;
    }

    // When alpha has a constant denominator the scaled field is itself
    // polynomial; keep it exact.
    std::optional<std::vector<Poly>> scaled;
    if (alpha.den().total_degree() == 0) {
        const Rational c = alpha.den().terms().begin()->second;
        std::vector<Poly> sp;
        sp.reserve(V.size());
        for (const Poly& p : V)
            sp.push_back((p * alpha.num()).scaled(Rational(1) / c));
        scaled = std::move(sp);
    }

    return SystemPair{std::move(name),
                      V,
                      alpha,
                      sigma,
                      declared.value_or(kind),
                      std::move(scaled),
                      HypothesisReport{kind, *chosen, std::move(compat)}};
}

SystemPair corollary_pair(const std::vector<Poly>& V, const Poly& delta,
                          const AffineInvolution& sigma, SymmetryKind kind, std::string name) {
    require_dimensions(V, sigma);
    const int n = sigma.dimension();
    if (delta.nvars() != n)
        throw DimensionMismatch("delta variable count differs from the space dimension");

    OddnessReport odd = is_sigma_odd(delta, sigma);
    if (!odd.odd)
        throw NotSigmaOdd("delta is not sigma-odd; residual " + odd.residual.str());

    const Poly one = Poly::constant(n, Rational(1));
    const Poly d2m1 = delta * delta - one;
    const Poly dm1 = delta - one;
    std::vector<Poly> base, scaled;
    base.reserve(V.size());
    scaled.reserve(V.size());
    for (const Poly& p : V) {
        base.push_back(p * d2m1);
        scaled.push_back(p * dm1);
    }

    RationalFn alpha = alpha_from_delta(delta);
    // (delta^2 - 1) = (delta - 1)(1 + delta) exactly, so base*alpha must
    // reproduce the scaled components identically.
    for (size_t i = 0; i < V.size(); ++i) {
        RationalFn lhs(base[i] * alpha.num(), alpha.den());
        if (!lhs.equals(RationalFn::from_poly(scaled[i])))
            throw Error("corollary scaling identity failed"); // unreachable by construction
    }

    SystemPair pair = make_pair(base, alpha, sigma, kind, std::move(name));
    pair.scaled_poly = std::move(scaled);
    return pair;
}

GuardStatus guard_cycle(const CycleRecord& cycle, const Poly& delta, int samples) {
    double mn = std::numeric_limits<double>::infinity();
    for (int k = 0; k < samples; ++k) {
        const std::vector<double> z = cycle.at(cycle.period * k / samples);
        mn = std::min(mn, 1.0 + delta.eval(z));
    }
    return GuardStatus{mn > kGuardFloor, mn};
}

GuardStatus guard_cycle(const CycleRecord& cycle, const RationalFn& alpha, int samples) {
    bool num_pos = true, num_neg = true, den_pos = true, den_neg = true;
    double min_abs = std::numeric_limits<double>::infinity();
    for (int k = 0; k < samples; ++k) {
        const std::vector<double> z = cycle.at(cycle.period * k / samples);
        const double num = alpha.num().eval(z);
        const double den = alpha.den().eval(z);
        if (num >= 0.0)
            num_neg = false;
        if (num <= 0.0)
            num_pos = false;
        if (den >= 0.0)
            den_neg = false;
        if (den <= 0.0)
            den_pos = false;
        min_abs = den != 0.0 ? std::min(min_abs, std::abs(num / den)) : 0.0;
    }
    const bool ok =
        (num_pos || num_neg) && (den_pos || den_neg) && min_abs > kGuardFloor;
    return GuardStatus{ok, min_abs};
}

ComparisonReport compare_periods(const SystemPair& pair, const Ray& ray,
                                 std::span<const double> radii, const CompareOptions& opts) {
    const EvaluableField fb = pair.base_field();
    const EvaluableField fs = pair.scaled_field();
    const int n = fb.dimension();
    if (static_cast<int>(ray.origin.size()) != n || static_cast<int>(ray.direction.size()) != n)
        throw DimensionMismatch("ray dimension differs from field dimension");

    ComparisonReport rep{{}, kNaN, 0, pair.hypotheses};
    double max_rel = -1.0;
    for (double r : radii) {
        ComparisonRow row;
        row.r = r;
        row.point.resize(n);
        for (int i = 0; i < n; ++i)
            row.point[i] = ray.origin[i] + r * ray.direction[i];
        row.T_base = row.T_scaled = row.abs_dT = row.rel_dT = kNaN;
        row.guard_min = row.invariance_defect = kNaN;

        std::optional<CycleRecord> base_rec;
        try {
            base_rec = measure_period(fb, row.point, opts.cycle);
            row.T_base = base_rec->period;
            row.base_status = SampleStatus::Ok;
        } catch (const Error& e) {
            row.base_status = status_of(e);
        }
        try {
            row.T_scaled = measure_period(fs, row.point, opts.cycle).period;
            row.scaled_status = SampleStatus::Ok;
        } catch (const Error& e) {
            row.scaled_status = status_of(e);
        }

        if (base_rec) {
            const GuardStatus gs = guard_cycle(*base_rec, pair.alpha, opts.guard_samples);
            row.guard_known = true;
            row.guard_ok = gs.ok;
            row.guard_min = gs.min_value;
            const InvarianceReport inv = verify_sigma_invariance(*base_rec, pair.sigma);
            row.invariant_known = true;
            row.invariant = inv.invariant;
            row.invariance_defect = inv.defect;
        }

        const bool measured =
            row.base_status == SampleStatus::Ok && row.scaled_status == SampleStatus::Ok;
        if (measured) {
            row.abs_dT = std::abs(row.T_base - row.T_scaled);
            row.rel_dT = row.abs_dT / row.T_base;
        }
        row.in_summary = measured && row.guard_ok && row.invariant;
        if (row.in_summary) {
            max_rel = std::max(max_rel, row.rel_dT);
            ++rep.counted_rows;
        }
        rep.rows.push_back(std::move(row));
    }
    if (rep.counted_rows > 0)
        rep.max_rel_dT = max_rel;
    return rep;
}

std::string ComparisonReport::to_csv() const {
    std::string out = "r,T_base,T_scaled,abs_dT,rel_dT,guard,invariant\n";
    for (const ComparisonRow& row : rows) {
        out += fmt15(row.r);
        out += ',';
        out += fmt15(row.T_base);
        out += ',';
        out += fmt15(row.T_scaled);
        out += ',';
        out += fmt15(row.abs_dT);
        out += ',';
        out += fmt15(row.rel_dT);
        out += ',';
        out += row.guard_known ? (row.guard_ok ? "ok" : "violated") : "n/a";
        out += ',';
        out += row.invariant_known ? (row.invariant ? "ok" : "broken") : "n/a";
        out += '\n';
    }
    return out;
}

std::vector<ComparisonReport> double_reversibility_suite(
    const std::vector<Poly>& V, const std::vector<AffineInvolution>& sigmas,
    const std::vector<Poly>& deltas, const Ray& ray, std::span<const double> radii,
    const CompareOptions& opts) {
    if (sigmas.size() != deltas.size())
        throw DimensionMismatch("one delta per involution is required");
    std::vector<ComparisonReport> reports;
    reports.reserve(sigmas.size());
    for (size_t i = 0; i < sigmas.size(); ++i) {
        const OddnessReport odd = is_sigma_odd(deltas[i], sigmas[i]);
        if (!odd.odd)
            throw NotSigmaOdd("reduction delta is not sigma-odd; residual " +
                              odd.residual.str());
        SystemPair pair = make_pair(V, alpha_from_delta(deltas[i]), sigmas[i]);
        reports.push_back(compare_periods(pair, ray, radii, opts));
    }
    return reports;
}

} // namespace isoperiod
