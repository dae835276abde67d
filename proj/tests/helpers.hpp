#pragma once

#include "isoperiod/poly.hpp"
#include "isoperiod/rational.hpp"

#include <initializer_list>
#include <vector>

// Compact construction of the planar polynomial fields the tests use.
namespace testutil {

struct Term2 {
    const char* coeff;
    int ex;
    int ey;
};

inline isoperiod::Poly poly2(std::initializer_list<Term2> terms) {
    isoperiod::Poly p(2);
    for (const Term2& t : terms)
        p.add_term({t.ex, t.ey}, isoperiod::parse_rational(t.coeff));
    return p;
}

/// (y, -x): the harmonic oscillator, clockwise circles.
inline std::vector<isoperiod::Poly> harmonic() {
    return {poly2({{"1", 0, 1}}), poly2({{"-1", 1, 0}})};
}

/// (y, -x + y - x^2 y): the van der Pol oscillator.
inline std::vector<isoperiod::Poly> vdp() {
    return {poly2({{"1", 0, 1}}), poly2({{"-1", 1, 0}, {"1", 0, 1}, {"-1", 2, 1}})};
}

/// (y, -x) scaled by (1 - x^2), expanded exactly.
inline std::vector<isoperiod::Poly> harmonic_1mx2() {
    return {poly2({{"1", 0, 1}, {"-1", 2, 1}}), poly2({{"-1", 1, 0}, {"1", 3, 0}})};
}

} // namespace testutil
