#pragma once

#include "isoperiod/errors.hpp"
#include "isoperiod/rational.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace isoperiod {

/// Exact multivariate polynomial over rational coefficients.
///
/// Terms map a dense exponent tuple (length nvars) to a nonzero rational
/// coefficient. The zero polynomial has an empty term map. Values are
/// immutable in spirit: every operation returns a fresh Poly, and all
/// operations are pure, so shared instances are safe across threads.
class Poly {
public:
    using Exponents = std::vector<int>;
    using TermMap = std::map<Exponents, Rational>;

    explicit Poly(int nvars);

    static Poly zero(int nvars) { return Poly(nvars); }
    static Poly constant(int nvars, const Rational& c);
    /// The monomial z_index.
    static Poly variable(int nvars, int index);

    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int total_degree() const; // -1 for the zero polynomial

    /// Adds c * z^e into this polynomial, pruning a resulting zero term.
    Poly& add_term(Exponents e, const Rational& c);

    double eval(std::span<const double> point) const;
    Rational eval_exact(const RationalVector& point) const;

    Poly operator-() const;
    Poly operator+(const Poly& q) const;
    Poly operator-(const Poly& q) const;
    Poly operator*(const Poly& q) const;
    Poly scaled(const Rational& c) const;
    Poly pow(int k) const;

    /// Exact partial derivative with respect to variable `index`.
    Poly partial(int index) const;

    bool operator==(const Poly& q) const { return nvars_ == q.nvars_ && terms_ == q.terms_; }

    std::string str(std::span<const std::string> var_names = {}) const;

private:
    int nvars_;
    TermMap terms_;

    void require_same_space(const Poly& q) const;
};

/// Exact composition p(Sz + b).
Poly compose_affine(const Poly& p, const RationalMatrix& S, const RationalVector& b);

/// Quotient of two polynomials. The denominator is nonzero; no
/// cancellation is performed, and equality is decided by
/// cross-multiplication (num1*den2 == num2*den1).
class RationalFn {
public:
    RationalFn(Poly num, Poly den);

    static RationalFn one(int nvars);
    static RationalFn from_poly(Poly p);

    int nvars() const { return num_.nvars(); }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    /// Throws DenominatorVanishes when den(point) == 0.
    double eval(std::span<const double> point) const;
    Rational eval_exact(const RationalVector& point) const;

    RationalFn operator*(const RationalFn& r) const;

    bool equals(const RationalFn& r) const;
    bool operator==(const RationalFn& r) const { return equals(r); }

    std::string str(std::span<const std::string> var_names = {}) const;

private:
    Poly num_;
    Poly den_;
};

} // namespace isoperiod
