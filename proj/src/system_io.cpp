#include "isoperiod/system_io.hpp"

#include "isoperiod/errors.hpp"
#include "isoperiod/rational.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace isoperiod {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& source, const std::string& where,
                       const std::string& what) {
    throw ParseError(source + ": " + where + ": " + what);
}

const json& member(const json& j, const char* key, const std::string& source,
                   const std::string& where) {
    const auto it = j.find(key);
    if (it == j.end())
        fail(source, where, std::string("missing field '") + key + "'");
    return *it;
}

Rational rational_at(const json& j, const std::string& source, const std::string& where) {
    if (!j.is_string())
        fail(source, where, "rational coefficients must be strings like \"-3/7\"");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
        fail(source, where, e.what());
    }
}

Poly poly_at(const json& j, int nvars, const std::string& source, const std::string& where) {
    if (!j.is_array())
        fail(source, where, "polynomial must be an array of [coeff, exponents] terms");
    Poly p = Poly::zero(nvars);
    int index = 0;
    for (const json& term : j) {
        const std::string here = where + ", term " + std::to_string(index++);
        if (!term.is_array() || term.size() != 2)
            fail(source, here, "term must be [\"coeff\", [e1, ..., en]]");
        const Rational c = rational_at(term[0], source, here);
        const json& ejs = term[1];
        if (!ejs.is_array() || static_cast<int>(ejs.size()) != nvars)
            fail(source, here, "exponent tuple must list one entry per variable");
        Poly::Exponents e;
        e.reserve(nvars);
        for (const json& ej : ejs) {
            if (!ej.is_number_integer() || ej.get<long long>() < 0)
                fail(source, here, "exponents must be non-negative integers");
            e.push_back(static_cast<int>(ej.get<long long>()));
        }
        p.add_term(std::move(e), c);
    }
    return p;
}

RationalFn rationalfn_at(const json& j, int nvars, const std::string& source,
                         const std::string& where) {
    if (!j.is_object())
        fail(source, where, "expected an object with 'num' and 'den' polynomials");
    Poly num = poly_at(member(j, "num", source, where), nvars, source, where + ".num");
    Poly den = poly_at(member(j, "den", source, where), nvars, source, where + ".den");
    if (den.is_zero())
        fail(source, where, "denominator polynomial is zero");
    return RationalFn(std::move(num), std::move(den));
}

std::vector<double> doubles_at(const json& j, int n, const std::string& source,
                               const std::string& where) {
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        fail(source, where, "expected an array of " + std::to_string(n) + " numbers");
    std::vector<double> out;
    out.reserve(n);
    for (const json& x : j) {
        if (!x.is_number())
            fail(source, where, "entries must be numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

AffineInvolution involution_at(const json& j, int n, const std::string& source,
                               const std::string& where) {
    if (!j.is_object())
        fail(source, where, "expected an object with 'S' and 'b'");
    const json& sj = member(j, "S", source, where);
    if (!sj.is_array() || static_cast<int>(sj.size()) != n)
        fail(source, where + ".S", "expected " + std::to_string(n) + " matrix rows");
    RationalMatrix S;
    for (int r = 0; r < n; ++r) {
        const json& rowj = sj[r];
        if (!rowj.is_array() || static_cast<int>(rowj.size()) != n)
            fail(source, where + ".S", "row " + std::to_string(r) + " must have " +
                                           std::to_string(n) + " entries");
        RationalVector row;
        for (int c = 0; c < n; ++c)
            row.push_back(rational_at(rowj[c], source, where + ".S"));
        S.push_back(std::move(row));
    }
    const json& bj = member(j, "b", source, where);
    if (!bj.is_array() || static_cast<int>(bj.size()) != n)
        fail(source, where + ".b", "expected " + std::to_string(n) + " entries");
    RationalVector b;
    for (int c = 0; c < n; ++c)
        b.push_back(rational_at(bj[c], source, where + ".b"));
    try {
        return make_involution(std::move(S), std::move(b));
    } catch (const NotAnInvolution& e) {
        fail(source, where, e.what());
    }
}

json poly_to_json(const Poly& p) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms())
        terms.push_back(json::array({format_rational(c), e}));
    return terms;
}

} // namespace

SystemSpec parse_system(const std::string& json_text, const std::string& source) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(source + ": " + e.what());
    }
    if (!root.is_object())
        fail(source, "document", "top level must be a JSON object");

    SystemSpec spec;
    if (const auto it = root.find("name"); it != root.end()) {
        if (!it->is_string())
            fail(source, "name", "must be a string");
        spec.name = it->get<std::string>();
    }

    const json& dimj = member(root, "dim", source, "document");
    if (!dimj.is_number_integer() || dimj.get<int>() < 1)
        fail(source, "dim", "must be a positive integer");
    spec.dim = dimj.get<int>();
    const int n = spec.dim;

    const json& varsj = member(root, "vars", source, "document");
    if (!varsj.is_array() || static_cast<int>(varsj.size()) != n)
        fail(source, "vars", "expected " + std::to_string(n) + " variable names");
    for (const json& v : varsj) {
        if (!v.is_string() || v.get<std::string>().empty())
            fail(source, "vars", "variable names must be non-empty strings");
        spec.vars.push_back(v.get<std::string>());
    }

    const json& fieldj = member(root, "field", source, "document");
    if (!fieldj.is_array() || static_cast<int>(fieldj.size()) != n)
        fail(source, "field", "expected " + std::to_string(n) + " components");
    for (int i = 0; i < n; ++i)
        spec.field.push_back(
            poly_at(fieldj[i], n, source, "field[" + std::to_string(i) + "]"));

    if (const auto it = root.find("alpha"); it != root.end())
        spec.alpha = rationalfn_at(*it, n, source, "alpha");
    if (const auto it = root.find("delta"); it != root.end())
        spec.delta = poly_at(*it, n, source, "delta");

    if (const auto it = root.find("involutions"); it != root.end()) {
        if (!it->is_object())
            fail(source, "involutions", "must be an object of named involutions");
        for (const auto& [key, value] : it->items())
            spec.involutions.emplace(key,
                                     involution_at(value, n, source, "involutions." + key));
    }

    if (const auto it = root.find("kind"); it != root.end()) {
        if (!it->is_object())
            fail(source, "kind", "must map involution names to a kind");
        for (const auto& [key, value] : it->items()) {
            if (!spec.involutions.count(key))
                fail(source, "kind", "unknown involution '" + key + "'");
            if (!value.is_string())
                fail(source, "kind." + key, "must be \"reversible\" or \"symmetric\"");
            const std::string k = value.get<std::string>();
            if (k == "reversible")
                spec.kinds.emplace(key, SymmetryKind::Reversible);
            else if (k == "symmetric")
                spec.kinds.emplace(key, SymmetryKind::Symmetric);
            else
                fail(source, "kind." + key, "must be \"reversible\" or \"symmetric\"");
        }
    }

    if (const auto it = root.find("seed"); it != root.end())
        spec.seed = doubles_at(*it, n, source, "seed");
    if (const auto it = root.find("section"); it != root.end()) {
        if (!it->is_object())
            fail(source, "section", "must be an object with 'point' and 'normal'");
        Section sec;
        sec.point = doubles_at(member(*it, "point", source, "section"), n, source,
                               "section.point");
        sec.normal = doubles_at(member(*it, "normal", source, "section"), n, source,
                                "section.normal");
        spec.section = std::move(sec);
    }
    return spec;
}

SystemSpec load_system(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_system(buf.str(), path);
}

std::string serialize_system(const SystemSpec& spec) {
    json root = json::object();
    if (!spec.name.empty())
        root["name"] = spec.name;
    root["dim"] = spec.dim;
    root["vars"] = spec.vars;
    json field = json::array();
    for (const Poly& p : spec.field)
        field.push_back(poly_to_json(p));
    root["field"] = std::move(field);
    if (spec.alpha)
        root["alpha"] =
            json{{"num", poly_to_json(spec.alpha->num())}, {"den", poly_to_json(spec.alpha->den())}};
    if (spec.delta)
        root["delta"] = poly_to_json(*spec.delta);
    if (!spec.involutions.empty()) {
        json invs = json::object();
        for (const auto& [key, sigma] : spec.involutions) {
            json S = json::array();
            for (const RationalVector& row : sigma.matrix()) {
                json rowj = json::array();
                for (const Rational& q : row)
                    rowj.push_back(format_rational(q));
                S.push_back(std::move(rowj));
            }
            json b = json::array();
            for (const Rational& q : sigma.offset())
                b.push_back(format_rational(q));
            invs[key] = json{{"S", std::move(S)}, {"b", std::move(b)}};
        }
        root["involutions"] = std::move(invs);
    }
    if (!spec.kinds.empty()) {
        json kinds = json::object();
        for (const auto& [key, kind] : spec.kinds)
            kinds[key] = kind == SymmetryKind::Reversible ? "reversible" : "symmetric";
        root["kind"] = std::move(kinds);
    }
    if (spec.seed)
        root["seed"] = *spec.seed;
    if (spec.section)
        root["section"] =
            json{{"point", spec.section->point}, {"normal", spec.section->normal}};
    return root.dump(2) + "\n";
}

} // namespace isoperiod
