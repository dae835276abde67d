#include "isoperiod/symmetry.hpp"

namespace isoperiod {

const char* to_string(SymmetryKind kind) {
    switch (kind) {
    case SymmetryKind::Reversible: return "reversible";
    case SymmetryKind::Symmetric: return "symmetric";
    case SymmetryKind::Neither: return "neither";
    }
    return "neither";
}

Poly compose(const Poly& p, const AffineInvolution& sigma) {
    return compose_affine(p, sigma.matrix(), sigma.offset());
}

namespace {

SymmetryReport check_condition(const std::vector<Poly>& V, const AffineInvolution& sigma,
                               SymmetryKind kind) {
    const int n = sigma.dimension();
    if (static_cast<int>(V.size()) != n)
        throw DimensionMismatch("field component count differs from involution dimension");
    for (const auto& p : V)
        if (p.nvars() != n)
            throw DimensionMismatch("field component variable count differs from dimension");

    // sign = +1 tests V o sigma = -SV (reversible), -1 tests V o sigma = +SV.
    const Rational sign = (kind == SymmetryKind::Reversible) ? 1 : -1;
    std::vector<Poly> residuals;
    for (int i = 0; i < n; ++i) {
        Poly sv(n);
        for (int j = 0; j < n; ++j)
            sv = sv + V[j].scaled(sigma.matrix()[i][j]);
        Poly r = compose(V[i], sigma) + sv.scaled(sign);
        if (!r.is_zero())
            residuals.push_back(std::move(r));
    }
    SymmetryReport report;
    report.kind = residuals.empty() ? kind : SymmetryKind::Neither;
    report.residuals = std::move(residuals);
    return report;
}

} // namespace

SymmetryReport check_reversible(const std::vector<Poly>& V, const AffineInvolution& sigma) {
    return check_condition(V, sigma, SymmetryKind::Reversible);
}

SymmetryReport check_symmetric(const std::vector<Poly>& V, const AffineInvolution& sigma) {
    return check_condition(V, sigma, SymmetryKind::Symmetric);
}

OddnessReport is_sigma_odd(const Poly& delta, const AffineInvolution& sigma) {
    if (delta.nvars() != sigma.dimension())
        throw DimensionMismatch("delta variable count differs from involution dimension");
    return OddnessReport(compose(delta, sigma) + delta);
}

OddnessReport is_sigma_odd(const RationalFn& delta, const AffineInvolution& sigma) {
    if (delta.nvars() != sigma.dimension())
        throw DimensionMismatch("delta variable count differs from involution dimension");
    const Poly ns = compose(delta.num(), sigma);
    const Poly ds = compose(delta.den(), sigma);
    return OddnessReport(ns * delta.den() + delta.num() * ds);
}

CompatibilityReport check_compatible(const RationalFn& alpha, const AffineInvolution& sigma) {
    if (alpha.nvars() != sigma.dimension())
        throw DimensionMismatch("alpha variable count differs from involution dimension");
    const Poly& p = alpha.num();
    const Poly& q = alpha.den();
    const Poly ps = compose(p, sigma);
    const Poly qs = compose(q, sigma);
    Poly residual = p * qs + ps * q - (p * ps).scaled(2);
    return CompatibilityReport(std::move(residual));
}

RationalFn alpha_from_delta(const Poly& delta) {
    const int n = delta.nvars();
    return RationalFn(Poly::constant(n, 1), Poly::constant(n, 1) + delta);
}

RationalFn delta_from_alpha(const RationalFn& alpha) {
    if (alpha.num().is_zero())
        throw ZeroAlpha("alpha has zero numerator, cannot invert");
    return RationalFn(alpha.den() - alpha.num(), alpha.num());
}

} // namespace isoperiod
