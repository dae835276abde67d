#include <doctest.h>

#include "helpers.hpp"
#include "isoperiod/errors.hpp"
#include "isoperiod/symmetry.hpp"

#include <vector>

using namespace isoperiod;
using testutil::poly2;

namespace {

const AffineInvolution kMirrorY = AffineInvolution::mirror(2, 0); // (x,y) -> (-x,y)
const AffineInvolution kMirrorX = AffineInvolution::mirror(2, 1); // (x,y) -> (x,-y)
const AffineInvolution kOrigin = AffineInvolution::point_reflection(2);

} // namespace

TEST_CASE("harmonic oscillator is reversible and symmetric") {
    const auto V = testutil::harmonic();
    CHECK(check_reversible(V, kMirrorY).holds());
    CHECK(check_reversible(V, kMirrorX).holds());
    CHECK(check_reversible(V, AffineInvolution::swap_xy()).holds());
    CHECK(check_symmetric(V, kOrigin).holds());
    CHECK(check_reversible(V, kMirrorY).residuals.empty());
    CHECK(check_reversible(V, kMirrorY).kind == SymmetryKind::Reversible);
}

TEST_CASE("van der Pol fails mirror reversibility with the known residual") {
    const auto V = testutil::vdp();
    const SymmetryReport rep = check_reversible(V, kMirrorY);
    CHECK_FALSE(rep.holds());
    CHECK(rep.kind == SymmetryKind::Neither);
    REQUIRE(rep.residuals.size() == 1);
    CHECK(rep.residuals[0] == poly2({{"2", 0, 1}, {"-2", 2, 1}})); // 2y(1 - x^2)
    CHECK(check_symmetric(V, kOrigin).holds());
    CHECK_FALSE(check_symmetric(V, kMirrorY).holds());
}

TEST_CASE("the (1 - x^2) rotation family is reversible under both mirrors") {
    // The scaling factor depends on x alone, so both axis mirrors reverse
    // time for this family.
    const auto V = testutil::harmonic_1mx2();
    CHECK(check_reversible(V, kMirrorY).holds());
    CHECK(check_reversible(V, kMirrorX).holds());
    CHECK(check_symmetric(V, kOrigin).holds());
}

TEST_CASE("the (1 - (x+y)^2) rotation family is point-symmetric only") {
    const Poly f = poly2({{"1", 0, 0}, {"-1", 2, 0}, {"-2", 1, 1}, {"-1", 0, 2}});
    const std::vector<Poly> V{poly2({{"1", 0, 1}}) * f, poly2({{"-1", 1, 0}}) * f};
    CHECK(check_symmetric(V, kOrigin).holds());
    CHECK_FALSE(check_reversible(V, kMirrorY).holds());
    CHECK_FALSE(check_reversible(V, kMirrorX).holds());
}

TEST_CASE("symmetry checks validate dimensions") {
    const auto V = testutil::harmonic();
    CHECK_THROWS_AS(check_reversible(V, AffineInvolution::point_reflection(3)),
                    DimensionMismatch);
    CHECK_THROWS_AS(check_reversible({V[0]}, kMirrorY), DimensionMismatch);
}

TEST_CASE("sigma-oddness of polynomials") {
    const Poly x = Poly::variable(2, 0);
    const Poly y = Poly::variable(2, 1);
    CHECK(is_sigma_odd(x, kMirrorY).odd);
    CHECK(is_sigma_odd(x + y, kOrigin).odd);
    CHECK(is_sigma_odd(-y, kMirrorX).odd);

    const OddnessReport even = is_sigma_odd(x * x, kMirrorY);
    CHECK_FALSE(even.odd);
    CHECK(even.residual == poly2({{"2", 2, 0}})); // delta o sigma + delta = 2x^2
}

TEST_CASE("sigma-oddness of quotients, cross-multiplied") {
    const Poly one = Poly::constant(2, 1);
    const Poly x = Poly::variable(2, 0);
    const RationalFn f(x, one + x * x); // x / (1 + x^2)
    CHECK(is_sigma_odd(f, kMirrorY).odd);
    CHECK_FALSE(is_sigma_odd(RationalFn(one, one + x * x), kMirrorY).odd);
}

TEST_CASE("scaler compatibility condition") {
    const Poly one = Poly::constant(2, 1);
    const Poly x = Poly::variable(2, 0);
    const Poly y = Poly::variable(2, 1);

    CHECK(check_compatible(RationalFn(one, one + x), kMirrorY).compatible);
    CHECK(check_compatible(RationalFn(one, one + x + y), kOrigin).compatible);
    CHECK(check_compatible(RationalFn(one, one - y), kMirrorX).compatible);
    // Unreduced representation of 1/(1+x) is recognized all the same.
    CHECK(check_compatible(RationalFn(one - x, one - x * x), kMirrorY).compatible);

    const CompatibilityReport bad = check_compatible(RationalFn(one, one + x * x), kMirrorY);
    CHECK_FALSE(bad.compatible);
    CHECK(bad.residual == poly2({{"2", 2, 0}}));
}

TEST_CASE("alpha and delta convert back and forth") {
    const Poly x = Poly::variable(2, 0);
    const Poly y = Poly::variable(2, 1);
    const Poly one = Poly::constant(2, 1);

    const RationalFn alpha = alpha_from_delta(x);
    CHECK(alpha.equals(RationalFn(one, one + x)));
    CHECK(delta_from_alpha(alpha).equals(RationalFn::from_poly(x)));

    const Poly delta = x + y.scaled(Rational(-2, 3));
    CHECK(delta_from_alpha(alpha_from_delta(delta)).equals(RationalFn::from_poly(delta)));

    // Any compatible alpha reduces to 1/(1 + delta) with delta sigma-odd.
    const RationalFn unreduced(one - x, one - x * x);
    const RationalFn recovered = delta_from_alpha(unreduced);
    CHECK(is_sigma_odd(recovered, kMirrorY).odd);

    CHECK_THROWS_AS(delta_from_alpha(RationalFn(Poly::zero(2), one)), ZeroAlpha);
}
