#pragma once

#include "isoperiod/poly.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace isoperiod {

/// Evaluable right-hand side of a differential system, with an optional
/// domain guard. Evaluation at a guard-rejected point throws
/// GuardViolation rather than producing a NaN.
class EvaluableField {
public:
    using EvalFn = std::function<void(std::span<const double>, std::span<double>)>;
    using GuardFn = std::function<bool(std::span<const double>)>;

    EvaluableField(int dim, EvalFn eval, GuardFn guard = nullptr, std::string name = {});

    int dimension() const { return dim_; }
    const std::string& name() const { return name_; }

    bool guard_ok(std::span<const double> z) const { return !guard_ || guard_(z); }

    /// Writes W(z) into `out`; checks the guard first.
    void eval(std::span<const double> z, std::span<double> out) const;
    std::vector<double> operator()(std::span<const double> z) const;

    /// Field -W, sharing the guard. phi_{-W}(t, z) = phi_W(-t, z).
    EvaluableField negated() const;

    /// Field s(z) * W(z) for a scalar factor, with an optional extra guard.
    EvaluableField scaled_by(std::function<double(std::span<const double>)> factor,
                             GuardFn extra_guard = nullptr, std::string name = {}) const;

private:
    int dim_;
    EvalFn eval_;
    GuardFn guard_;
    std::string name_;
};

/// Polynomial field (V_1, ..., V_n); coefficients are flattened to double
/// once at construction.
EvaluableField make_field(const std::vector<Poly>& V, std::string name = {});

/// Field alpha(z) * V(z), guarded by |den(alpha)(z)| > den_floor.
EvaluableField make_scaled_field(const std::vector<Poly>& V, const RationalFn& alpha,
                                 double den_floor = 1e-9, std::string name = {});

} // namespace isoperiod
