#pragma once

#include "isoperiod/cycles.hpp"
#include "isoperiod/involution.hpp"
#include "isoperiod/poly.hpp"
#include "isoperiod/symmetry.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace isoperiod {

/// A system description as read from a JSON file: the polynomial field,
/// optional scaler/delta, named involutions with declared symmetry kinds,
/// and optional numeric experiment hints (seed, section).
///
/// File layout (rationals are strings, exponent tuples have one entry per
/// variable):
///   {
///     "name": "...",                          // optional label
///     "dim": 2,
///     "vars": ["x", "y"],
///     "field": [ [["1",[0,1]]],               // component 1: y
///                [["-1",[1,0]]] ],            // component 2: -x
///     "alpha": {"num": [...], "den": [...]},  // optional
///     "delta": [ ["1/3",[1,0]] ],             // optional
///     "involutions": {"sigma_y": {"S": [["-1","0"],["0","1"]],
///                                  "b": ["0","0"]}},
///     "kind": {"sigma_y": "reversible"},      // declared, re-verified
///     "seed": [2.0, 0.0],                     // optional
///     "section": {"point": [2.0,0.0], "normal": [0.0,1.0]} // optional
///   }
struct SystemSpec {
    std::string name;
    int dim = 0;
    std::vector<std::string> vars;
    std::vector<Poly> field;
    std::optional<RationalFn> alpha;
    std::optional<Poly> delta;
    std::map<std::string, AffineInvolution> involutions;
    std::map<std::string, SymmetryKind> kinds; // declared per involution name
    std::optional<std::vector<double>> seed;
    std::optional<Section> section;
};

/// Parses a JSON system description; diagnostics carry `source` and the
/// offending field. Throws ParseError.
SystemSpec parse_system(const std::string& json_text, const std::string& source = "<memory>");

/// Reads and parses the file at `path`. Throws ParseError.
SystemSpec load_system(const std::string& path);

/// Canonical JSON serialization; rational coefficients round-trip
/// bit-exactly through parse_system.
std::string serialize_system(const SystemSpec& spec);

} // namespace isoperiod
