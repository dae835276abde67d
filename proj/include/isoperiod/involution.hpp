#pragma once

#include "isoperiod/errors.hpp"
#include "isoperiod/rational.hpp"

#include <span>
#include <vector>

namespace isoperiod {

/// Affine involution z -> Sz + b with exact rational entries.
/// Construction validates S^2 = I and Sb + b = 0, so every instance
/// satisfies sigma(sigma(z)) = z identically. The Jacobian is the
/// constant matrix S.
class AffineInvolution {
public:
    AffineInvolution(RationalMatrix S, RationalVector b);

    /// Mirror z_axis -> -z_axis, other coordinates fixed.
    static AffineInvolution mirror(int n, int axis);
    /// Point reflection z -> -z.
    static AffineInvolution point_reflection(int n);
    /// Planar coordinate swap (x,y) -> (y,x).
    static AffineInvolution swap_xy();

    int dimension() const { return static_cast<int>(b_.size()); }
    const RationalMatrix& matrix() const { return S_; }
    const RationalVector& offset() const { return b_; }

    RationalVector apply_exact(const RationalVector& z) const;
    std::vector<double> apply(std::span<const double> z) const;

    bool operator==(const AffineInvolution& o) const { return S_ == o.S_ && b_ == o.b_; }

private:
    RationalMatrix S_;
    RationalVector b_;
};

/// Validated constructor, throwing NotAnInvolution when S^2 != I or
/// Sb + b != 0 (exact rational checks).
inline AffineInvolution make_involution(RationalMatrix S, RationalVector b) {
    return AffineInvolution(std::move(S), std::move(b));
}

/// Solution set of sigma(z) = z, i.e. (S - I) z = -b, described as an
/// offset point plus a basis of the direction space.
struct AffineSubspace {
    RationalVector offset;
    std::vector<RationalVector> basis;

    int dim() const { return static_cast<int>(basis.size()); }
    bool contains(const RationalVector& z) const;
};

AffineSubspace fixed_set(const AffineInvolution& sigma);

} // namespace isoperiod
