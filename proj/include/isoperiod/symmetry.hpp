#pragma once

#include "isoperiod/involution.hpp"
#include "isoperiod/poly.hpp"

#include <vector>

namespace isoperiod {

enum class SymmetryKind { Reversible, Symmetric, Neither };

const char* to_string(SymmetryKind kind);

/// Outcome of an exact symmetry check. `residuals` holds the defect
/// polynomials of the failing components and is empty iff the condition
/// holds.
struct SymmetryReport {
    SymmetryKind kind = SymmetryKind::Neither;
    std::vector<Poly> residuals;

    bool holds() const { return kind != SymmetryKind::Neither; }
};

/// Convenience: p composed with sigma, exactly.
Poly compose(const Poly& p, const AffineInvolution& sigma);

/// Anti-commutation criterion: residual_i = (V o sigma)_i + (S V)_i,
/// reversible iff every residual is the zero polynomial.
SymmetryReport check_reversible(const std::vector<Poly>& V, const AffineInvolution& sigma);

/// Commutation criterion: residual_i = (V o sigma)_i - (S V)_i.
SymmetryReport check_symmetric(const std::vector<Poly>& V, const AffineInvolution& sigma);

struct OddnessReport {
    bool odd = false;
    Poly residual; // delta o sigma + delta

    explicit OddnessReport(Poly r) : odd(r.is_zero()), residual(std::move(r)) {}
};

/// delta o sigma = -delta, exactly.
OddnessReport is_sigma_odd(const Poly& delta, const AffineInvolution& sigma);

/// Same condition for a quotient delta = N/D in cross-multiplied form:
/// (N o sigma) * D + N * (D o sigma) = 0.
OddnessReport is_sigma_odd(const RationalFn& delta, const AffineInvolution& sigma);

struct CompatibilityReport {
    bool compatible = false;
    Poly residual;

    explicit CompatibilityReport(Poly r) : compatible(r.is_zero()), residual(std::move(r)) {}
};

/// Scaler condition alpha + alpha o sigma = 2 * alpha * (alpha o sigma),
/// decided exactly in cross-multiplied form: with alpha = P/Q the
/// residual is P*(Q o sigma) + (P o sigma)*Q - 2*P*(P o sigma).
CompatibilityReport check_compatible(const RationalFn& alpha, const AffineInvolution& sigma);

/// alpha = 1 / (1 + delta).
RationalFn alpha_from_delta(const Poly& delta);

/// delta = 1/alpha - 1 = (Q - P)/P for alpha = P/Q. Throws ZeroAlpha when
/// the numerator of alpha is the zero polynomial.
RationalFn delta_from_alpha(const RationalFn& alpha);

} // namespace isoperiod
