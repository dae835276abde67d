#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace isoperiod {

/// Arbitrary-precision rational scalar. All symbolic arithmetic in the
/// toolkit is exact; conversion to double happens only at evaluation
/// boundaries.
using Rational = mpq_class;

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

/// Parses "p/q" or an integer string into a canonical rational.
/// Throws ParseError on malformed input or zero denominator.
Rational parse_rational(const std::string& text);

/// Canonical form: "p" when the denominator is 1, else "p/q".
/// format(parse(s)) is a fixed point, giving bit-exact round trips.
std::string format_rational(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

} // namespace isoperiod
