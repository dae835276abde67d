#include "isoperiod/field.hpp"

#include "isoperiod/errors.hpp"

#include <cmath>
#include <utility>

namespace isoperiod {

namespace {

// Poly with coefficients pre-converted to double for the integration
// hot path.
struct CompiledPoly {
    struct Term {
        double c;
        std::vector<int> e;
    };
    int nvars = 0;
    std::vector<Term> terms;

    explicit CompiledPoly(const Poly& p) : nvars(p.nvars()) {
        terms.reserve(p.terms().size());
        for (const auto& [e, c] : p.terms())
            terms.push_back({to_double(c), e});
    }

    double eval(std::span<const double> z) const {
        double acc = 0.0;
        for (const auto& t : terms) {
            double m = t.c;
            for (int i = 0; i < nvars; ++i) {
                const double zi = z[i];
                for (int k = 0; k < t.e[i]; ++k)
                    m *= zi;
            }
            acc += m;
        }
        return acc;
    }
};

int checked_dim(const std::vector<Poly>& V) {
    if (V.empty())
        throw DimensionMismatch("field needs at least one component");
    const int n = static_cast<int>(V.size());
    for (const auto& p : V)
        if (p.nvars() != n)
            throw DimensionMismatch("field component variable count differs from dimension");
    return n;
}

} // namespace

EvaluableField::EvaluableField(int dim, EvalFn eval, GuardFn guard, std::string name)
    : dim_(dim), eval_(std::move(eval)), guard_(std::move(guard)), name_(std::move(name)) {}

void EvaluableField::eval(std::span<const double> z, std::span<double> out) const {
    if (static_cast<int>(z.size()) != dim_ || static_cast<int>(out.size()) != dim_)
        throw DimensionMismatch("field evaluation with wrong state dimension");
    if (guard_ && !guard_(z))
        throw GuardViolation("field evaluated outside its domain",
                             std::vector<double>(z.begin(), z.end()));
    eval_(z, out);
}

std::vector<double> EvaluableField::operator()(std::span<const double> z) const {
    std::vector<double> out(dim_);
    eval(z, out);
    return out;
}

EvaluableField EvaluableField::negated() const {
    EvalFn inner = eval_;
    const int n = dim_;
    return EvaluableField(
        n,
        [inner, n](std::span<const double> z, std::span<double> out) {
            inner(z, out);
            for (int i = 0; i < n; ++i)
                out[i] = -out[i];
        },
        guard_, name_.empty() ? std::string{} : "-" + name_);
}

EvaluableField EvaluableField::scaled_by(std::function<double(std::span<const double>)> factor,
                                         GuardFn extra_guard, std::string name) const {
    EvalFn inner = eval_;
    const int n = dim_;
    GuardFn guard = guard_;
    if (extra_guard) {
        if (guard) {
            GuardFn g1 = guard;
            GuardFn g2 = extra_guard;
            guard = [g1, g2](std::span<const double> z) { return g1(z) && g2(z); };
        } else {
            guard = extra_guard;
        }
    }
    return EvaluableField(
        n,
        [inner, factor, n](std::span<const double> z, std::span<double> out) {
            inner(z, out);
            const double s = factor(z);
            for (int i = 0; i < n; ++i)
                out[i] *= s;
        },
        std::move(guard), std::move(name));
}

EvaluableField make_field(const std::vector<Poly>& V, std::string name) {
    const int n = checked_dim(V);
    std::vector<CompiledPoly> comp;
    comp.reserve(V.size());
    for (const auto& p : V)
        comp.emplace_back(p);
    return EvaluableField(
        n,
        [comp = std::move(comp), n](std::span<const double> z, std::span<double> out) {
            for (int i = 0; i < n; ++i)
                out[i] = comp[i].eval(z);
        },
        nullptr, std::move(name));
}

EvaluableField make_scaled_field(const std::vector<Poly>& V, const RationalFn& alpha,
                                 double den_floor, std::string name) {
    const int n = checked_dim(V);
    if (alpha.nvars() != n)
        throw DimensionMismatch("alpha variable count differs from field dimension");
    std::vector<CompiledPoly> comp;
    comp.reserve(V.size());
    for (const auto& p : V)
        comp.emplace_back(p);
    CompiledPoly num(alpha.num());
    CompiledPoly den(alpha.den());
    auto guard = [den, den_floor](std::span<const double> z) {
        return std::abs(den.eval(z)) > den_floor;
    };
    return EvaluableField(
        n,
        [comp = std::move(comp), num = std::move(num), den = std::move(den),
         n](std::span<const double> z, std::span<double> out) {
            const double a = num.eval(z) / den.eval(z);
            for (int i = 0; i < n; ++i)
                out[i] = a * comp[i].eval(z);
        },
        std::move(guard), std::move(name));
}

} // namespace isoperiod
