// Command-line front end: symbolic hypothesis checks, period sweeps,
// period comparisons for reparametrized pairs, and limit-cycle search.
//
// Exit codes: 0 success / hypotheses hold, 1 mathematical failure
// (hypothesis broken, threshold exceeded, no isolated cycle), 2 usage,
// configuration or file errors.

#include <CLI11.hpp>

#include "isoperiod/equiv.hpp"
#include "isoperiod/errors.hpp"
#include "isoperiod/field.hpp"
#include "isoperiod/symmetry.hpp"
#include "isoperiod/system_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace isoperiod;

std::string fmt15(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

std::vector<double> parse_number_list(const std::string& text, const char* flag) {
    std::vector<double> out;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t comma = text.find(',', pos);
        const std::string item =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ParseError(std::string(flag) + ": malformed number '" + item + "'");
        }
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

// Radii specification a:b:n, expanded to n evenly spaced values from a
// to b inclusive; must come out positive and strictly increasing.
std::vector<double> parse_radii_spec(const std::string& text) {
    const size_t c1 = text.find(':');
    const size_t c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw ParseError("--radii: expected start:stop:count, got '" + text + "'");
    double a = 0.0, b = 0.0;
    long n = 0;
    try {
        a = std::stod(text.substr(0, c1));
        b = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        n = std::stol(text.substr(c2 + 1));
    } catch (const std::exception&) {
        throw ParseError("--radii: malformed start:stop:count '" + text + "'");
    }
    if (n < 1)
        throw ParseError("--radii: count must be at least 1");
    if (!(a > 0.0))
        throw ParseError("--radii: start must be positive");
    if (n > 1 && !(b > a))
        throw ParseError("--radii: stop must exceed start");
    std::vector<double> radii;
    radii.reserve(n);
    for (long k = 0; k < n; ++k)
        radii.push_back(n == 1 ? a : a + (b - a) * k / (n - 1));
    return radii;
}

struct CommonOpts {
    double tol = 1e-12;
    double cycle_tol = -1.0;
    double horizon = 1e4;
};

CycleOptions to_cycle_options(const CommonOpts& c) {
    CycleOptions o;
    o.tol = c.tol;
    o.cycle_tol = c.cycle_tol;
    o.horizon = c.horizon;
    return o;
}

Ray make_ray(const std::string& ray_flag, int dim) {
    Ray ray;
    if (ray_flag.empty()) {
        ray.origin.assign(dim, 0.0);
        ray.direction.assign(dim, 0.0);
        ray.direction[0] = 1.0;
        return ray;
    }
    const std::vector<double> vals = parse_number_list(ray_flag, "--ray");
    if (static_cast<int>(vals.size()) != 2 * dim)
        throw ParseError("--ray: expected " + std::to_string(2 * dim) +
                         " comma-separated numbers (origin then direction)");
    ray.origin.assign(vals.begin(), vals.begin() + dim);
    ray.direction.assign(vals.begin() + dim, vals.end());
    return ray;
}

void write_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f)
        throw ParseError(out_path + ": cannot open for writing");
    f << text;
}

void print_residuals(const std::vector<Poly>& residuals, std::span<const std::string> vars) {
    for (const Poly& r : residuals)
        std::cout << "  residual = " << r.str(vars) << "\n";
}

int run_check(const std::string& path) {
    const SystemSpec spec = load_system(path);
    const std::span<const std::string> vars(spec.vars);
    bool ok = true;

    std::cout << "system: " << (spec.name.empty() ? path : spec.name) << "\n";
    for (const auto& [name, sigma] : spec.involutions) {
        const auto kit = spec.kinds.find(name);
        if (kit != spec.kinds.end()) {
            const bool want_rev = kit->second == SymmetryKind::Reversible;
            const SymmetryReport rep =
                want_rev ? check_reversible(spec.field, sigma) : check_symmetric(spec.field, sigma);
            std::cout << name << ": declared " << to_string(kit->second)
                      << (rep.holds() ? " - holds\n" : " - FAILS\n");
            if (!rep.holds()) {
                ok = false;
                print_residuals(rep.residuals, vars);
            }
        } else {
            const SymmetryReport rev = check_reversible(spec.field, sigma);
            const SymmetryReport symm = check_symmetric(spec.field, sigma);
            const SymmetryKind kind = rev.holds()   ? SymmetryKind::Reversible
                                      : symm.holds() ? SymmetryKind::Symmetric
                                                     : SymmetryKind::Neither;
            std::cout << name << ": detected " << to_string(kind) << "\n";
        }
    }

    if (spec.delta && !spec.involutions.empty()) {
        bool odd_somewhere = false;
        for (const auto& [name, sigma] : spec.involutions) {
            const OddnessReport rep = is_sigma_odd(*spec.delta, sigma);
            odd_somewhere = odd_somewhere || rep.odd;
            if (rep.odd)
                std::cout << "delta: sigma-odd w.r.t. " << name << "\n";
            else
                std::cout << "delta: NOT sigma-odd w.r.t. " << name << " (residual "
                          << rep.residual.str(vars) << ")\n";
        }
        ok = ok && odd_somewhere;
    }

    if (spec.alpha && !spec.involutions.empty()) {
        bool compatible_somewhere = false;
        for (const auto& [name, sigma] : spec.involutions) {
            const CompatibilityReport rep = check_compatible(*spec.alpha, sigma);
            compatible_somewhere = compatible_somewhere || rep.compatible;
            if (rep.compatible)
                std::cout << "alpha: sigma-compatible w.r.t. " << name << "\n";
            else
                std::cout << "alpha: NOT sigma-compatible w.r.t. " << name << " (residual "
                          << rep.residual.str(vars) << ")\n";
        }
        ok = ok && compatible_somewhere;
    }

    if (spec.alpha && spec.delta) {
        const bool same = spec.alpha->equals(alpha_from_delta(*spec.delta));
        std::cout << "alpha == 1/(1+delta): " << (same ? "yes" : "NO") << "\n";
        ok = ok && same;
    }

    std::cout << "result: " << (ok ? "OK" : "FAIL") << "\n";
    return ok ? 0 : 1;
}

int run_period(const std::string& path, const std::string& radii_spec,
               const std::string& ray_flag, const CommonOpts& common,
               const std::string& out_path) {
    const SystemSpec spec = load_system(path);
    const EvaluableField field = make_field(spec.field, spec.name);
    const std::vector<double> radii = parse_radii_spec(radii_spec);
    const Ray ray = make_ray(ray_flag, spec.dim);

    const std::vector<PeriodSample> samples =
        period_function(field, ray, radii, to_cycle_options(common));

    std::string csv = "r";
    if (spec.dim == 2)
        csv += ",x0,y0";
    else
        for (int i = 0; i < spec.dim; ++i)
            csv += ",x" + std::to_string(i);
    csv += ",T,status\n";
    int ok_count = 0;
    for (const PeriodSample& s : samples) {
        csv += fmt15(s.r);
        for (double c : s.point) {
            csv += ',';
            csv += fmt15(c);
        }
        csv += ',';
        csv += fmt15(s.period);
        csv += ',';
        csv += to_string(s.status);
        csv += '\n';
        if (s.status == SampleStatus::Ok)
            ++ok_count;
    }
    write_text(csv, out_path);
    std::cout << "period: " << samples.size() << " samples, " << ok_count << " ok, "
              << samples.size() - ok_count << " failed\n";
    return ok_count == static_cast<int>(samples.size()) ? 0 : 1;
}

int run_compare(const std::string& path, const std::string& radii_spec,
                const std::string& ray_flag, const std::string& involution_flag,
                double threshold, const CommonOpts& common, const std::string& out_path) {
    const SystemSpec spec = load_system(path);

    auto sit = spec.involutions.begin();
    if (!involution_flag.empty()) {
        sit = spec.involutions.find(involution_flag);
        if (sit == spec.involutions.end())
            throw ParseError(path + ": no involution named '" + involution_flag + "'");
    } else if (spec.involutions.size() != 1) {
        throw ParseError(path + ": declares " + std::to_string(spec.involutions.size()) +
                         " involutions; pick one with --involution");
    }
    const AffineInvolution& sigma = sit->second;

    std::optional<SymmetryKind> declared;
    if (const auto kit = spec.kinds.find(sit->first); kit != spec.kinds.end())
        declared = kit->second;

    std::optional<RationalFn> alpha = spec.alpha;
    if (!alpha && spec.delta)
        alpha = alpha_from_delta(*spec.delta);
    if (!alpha)
        throw ParseError(path + ": compare needs 'alpha' or 'delta' in the system file");

    const SystemPair pair = make_pair(spec.field, *alpha, sigma, declared, spec.name);
    CompareOptions copts;
    copts.cycle = to_cycle_options(common);
    const ComparisonReport report =
        compare_periods(pair, make_ray(ray_flag, spec.dim), parse_radii_spec(radii_spec), copts);

    write_text(report.to_csv(), out_path);
    std::cout << "kind: " << to_string(report.hypotheses.kind)
              << ", alpha compatible: " << (report.hypotheses.compatibility.compatible ? "yes" : "no")
              << "\n";
    std::cout << "max_rel_dT: " << fmt15(report.max_rel_dT) << " over " << report.counted_rows
              << " of " << report.rows.size() << " rows\n";
    const bool pass = report.counted_rows > 0 && report.max_rel_dT <= threshold;
    std::cout << "threshold " << fmt15(threshold) << ": " << (pass ? "met" : "EXCEEDED") << "\n";
    return pass ? 0 : 1;
}

int run_limit_cycle(const std::string& path, const std::string& seed_flag,
                    const std::string& section_flag, const CommonOpts& common,
                    const std::string& out_path) {
    const SystemSpec spec = load_system(path);
    const EvaluableField field = make_field(spec.field, spec.name);

    std::vector<double> seed;
    if (!seed_flag.empty()) {
        seed = parse_number_list(seed_flag, "--seed");
        if (static_cast<int>(seed.size()) != spec.dim)
            throw ParseError("--seed: expected " + std::to_string(spec.dim) + " numbers");
    } else if (spec.seed) {
        seed = *spec.seed;
    } else {
        throw ParseError(path + ": limit-cycle needs a seed (--seed or 'seed' in the file)");
    }

    Section section;
    if (!section_flag.empty()) {
        const std::vector<double> vals = parse_number_list(section_flag, "--section");
        if (static_cast<int>(vals.size()) != 2 * spec.dim)
            throw ParseError("--section: expected " + std::to_string(2 * spec.dim) +
                             " numbers (point then normal)");
        section.point.assign(vals.begin(), vals.begin() + spec.dim);
        section.normal.assign(vals.begin() + spec.dim, vals.end());
    } else if (spec.section) {
        section = *spec.section;
    } else {
        throw ParseError(path + ": limit-cycle needs a section (--section or 'section')");
    }

    LimitCycleOptions lopts;
    lopts.cycle = to_cycle_options(common);
    const CycleRecord rec = find_limit_cycle(field, seed, section, lopts);

    double amplitude = 0.0;
    constexpr int kSamples = 1024;
    for (int k = 0; k < kSamples; ++k)
        amplitude = std::max(amplitude, std::abs(rec.at(rec.period * k / kSamples)[0]));

    std::cout << "classification: " << to_string(rec.classification) << "\n";
    std::cout << "period: " << fmt15(rec.period) << "\n";
    std::cout << "amplitude: " << fmt15(amplitude) << "\n";
    std::cout << "closure defect: " << fmt15(rec.closure_defect) << "\n";

    if (!out_path.empty()) {
        std::string csv = "t";
        if (spec.dim == 2)
            csv += ",x,y";
        else
            for (int i = 0; i < spec.dim; ++i)
                csv += ",x" + std::to_string(i);
        csv += '\n';
        for (int k = 0; k <= kSamples; ++k) {
            const double t = rec.period * k / kSamples;
            csv += fmt15(t);
            for (double c : rec.at(t)) {
                csv += ',';
                csv += fmt15(c);
            }
            csv += '\n';
        }
        write_text(csv, out_path);
    }

    if (rec.classification != CycleClass::Limit) {
        std::cout << "no isolated cycle\n";
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact symmetry checks and period comparisons for planar polynomial systems"};
    app.require_subcommand(1);

    std::string path, radii_spec = "0.1:0.9:9", ray_flag, out_path, involution_flag;
    std::string seed_flag, section_flag;
    double threshold = 1e-7;
    CommonOpts common;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("system", path, "system description JSON file")->required();
        cmd->add_option("--tol", common.tol, "integrator tolerance");
        cmd->add_option("--cycle-tol", common.cycle_tol,
                        "cycle closure tolerance (default 1e-8*(1+|z0|))");
        cmd->add_option("--horizon", common.horizon, "integration time horizon");
        cmd->add_option("--out", out_path, "write CSV here instead of stdout");
    };

    CLI::App* check = app.add_subcommand("check", "verify declared symmetry hypotheses exactly");
    check->add_option("system", path, "system description JSON file")->required();

    CLI::App* period = app.add_subcommand("period", "sample the period function along a ray");
    add_common(period);
    period->add_option("--radii", radii_spec, "radius sweep start:stop:count");
    period->add_option("--ray", ray_flag, "ray as origin,direction (2*dim numbers)");

    CLI::App* compare = app.add_subcommand("compare", "compare base and reparametrized periods");
    add_common(compare);
    compare->add_option("--radii", radii_spec, "radius sweep start:stop:count");
    compare->add_option("--ray", ray_flag, "ray as origin,direction (2*dim numbers)");
    compare->add_option("--threshold", threshold, "max relative period difference accepted");
    compare->add_option("--involution", involution_flag, "involution name when several declared");

    CLI::App* limit = app.add_subcommand("limit-cycle", "find an isolated cycle from a seed");
    add_common(limit);
    limit->add_option("--seed", seed_flag, "seed point (dim numbers)");
    limit->add_option("--section", section_flag, "section as point,normal (2*dim numbers)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (check->parsed())
            return run_check(path);
        if (period->parsed())
            return run_period(path, radii_spec, ray_flag, common, out_path);
        if (compare->parsed())
            return run_compare(path, radii_spec, ray_flag, involution_flag, threshold, common,
                               out_path);
        if (limit->parsed())
            return run_limit_cycle(path, seed_flag, section_flag, common, out_path);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
