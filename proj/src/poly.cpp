#include "isoperiod/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace isoperiod {

Rational parse_rational(const std::string& text) {
    if (text.empty())
        throw ParseError("empty rational literal");
    mpq_class q;
    if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
        throw ParseError("malformed rational literal '" + text + "'");
    if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
        throw ParseError("zero denominator in rational literal '" + text + "'");
    q.canonicalize();
    return q;
}

std::string format_rational(const Rational& q) {
    return q.get_str();
}

Poly::Poly(int nvars) : nvars_(nvars) {
    if (nvars < 0)
        throw DimensionMismatch("polynomial needs a nonnegative variable count");
}

Poly Poly::constant(int nvars, const Rational& c) {
    Poly p(nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
}

Poly Poly::variable(int nvars, int index) {
    if (index < 0 || index >= nvars)
        throw DimensionMismatch("variable index out of range");
    Poly p(nvars);
    Exponents e(nvars, 0);
    e[index] = 1;
    p.add_term(std::move(e), 1);
    return p;
}

int Poly::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_)
        d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
}

Poly& Poly::add_term(Exponents e, const Rational& c) {
    if (static_cast<int>(e.size()) != nvars_)
        throw DimensionMismatch("exponent tuple length differs from nvars");
    for (int k : e)
        if (k < 0)
            throw DimensionMismatch("negative exponent");
    if (c == 0)
        return *this;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(std::move(e), c);
    } else {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
    return *this;
}

void Poly::require_same_space(const Poly& q) const {
    if (nvars_ != q.nvars_)
        throw DimensionMismatch("polynomials live in different variable spaces");
}

double Poly::eval(std::span<const double> point) const {
    if (static_cast<int>(point.size()) != nvars_)
        throw DimensionMismatch("evaluation point length differs from nvars");
    double acc = 0.0;
    for (const auto& [e, c] : terms_) {
        double m = to_double(c);
        for (int i = 0; i < nvars_; ++i)
            for (int k = 0; k < e[i]; ++k)
                m *= point[i];
        acc += m;
    }
    return acc;
}

Rational Poly::eval_exact(const RationalVector& point) const {
    if (static_cast<int>(point.size()) != nvars_)
        throw DimensionMismatch("evaluation point length differs from nvars");
    Rational acc = 0;
    for (const auto& [e, c] : terms_) {
        Rational m = c;
        for (int i = 0; i < nvars_; ++i)
            for (int k = 0; k < e[i]; ++k)
                m *= point[i];
        acc += m;
    }
    return acc;
}

Poly Poly::operator-() const {
    Poly r(nvars_);
    for (const auto& [e, c] : terms_)
        r.terms_.emplace(e, -c);
    return r;
}

Poly Poly::operator+(const Poly& q) const {
    require_same_space(q);
    Poly r = *this;
    for (const auto& [e, c] : q.terms_)
        r.add_term(e, c);
    return r;
}

Poly Poly::operator-(const Poly& q) const {
    require_same_space(q);
    Poly r = *this;
    for (const auto& [e, c] : q.terms_)
        r.add_term(e, -c);
    return r;
}

Poly Poly::operator*(const Poly& q) const {
    require_same_space(q);
    Poly r(nvars_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : q.terms_) {
            Exponents e(nvars_);
            for (int i = 0; i < nvars_; ++i)
                e[i] = ea[i] + eb[i];
            r.add_term(std::move(e), ca * cb);
        }
    }
    return r;
}

Poly Poly::scaled(const Rational& c) const {
    Poly r(nvars_);
    if (c == 0)
        return r;
    for (const auto& [e, t] : terms_)
        r.terms_.emplace(e, t * c);
    return r;
}

Poly Poly::pow(int k) const {
    if (k < 0)
        throw DimensionMismatch("negative polynomial power");
    Poly r = constant(nvars_, 1);
    for (int i = 0; i < k; ++i)
        r = r * *this;
    return r;
}

Poly Poly::partial(int index) const {
    if (index < 0 || index >= nvars_)
        throw DimensionMismatch("derivative variable index out of range");
    Poly r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[index] == 0)
            continue;
        Exponents d = e;
        d[index] -= 1;
        r.add_term(std::move(d), c * e[index]);
    }
    return r;
}

std::string Poly::str(std::span<const std::string> var_names) const {
    static const char* fallback[] = {"x", "y", "z", "w"};
    auto name = [&](int i) -> std::string {
        if (i < static_cast<int>(var_names.size()))
            return var_names[i];
        if (i < 4)
            return fallback[i];
        return "z" + std::to_string(i + 1);
    };
    if (terms_.empty())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rational a = c;
        if (first) {
            if (a < 0) {
                out << "-";
                a = -a;
            }
        } else {
            out << (a < 0 ? " - " : " + ");
            if (a < 0)
                a = -a;
        }
        first = false;
        bool has_var = std::any_of(e.begin(), e.end(), [](int k) { return k > 0; });
        if (a != 1 || !has_var) {
            out << format_rational(a);
            if (has_var)
                out << "*";
        }
        bool first_var = true;
        for (int i = 0; i < nvars_; ++i) {
            if (e[i] == 0)
                continue;
            if (!first_var)
                out << "*";
            first_var = false;
            out << name(i);
            if (e[i] > 1)
                out << "^" << e[i];
        }
    }
    return out.str();
}

Poly compose_affine(const Poly& p, const RationalMatrix& S, const RationalVector& b) {
    const int n = p.nvars();
    if (static_cast<int>(S.size()) != n || static_cast<int>(b.size()) != n)
        throw DimensionMismatch("affine map dimension differs from nvars");
    for (const auto& row : S)
        if (static_cast<int>(row.size()) != n)
            throw DimensionMismatch("affine map matrix is not square");

    // Images of the variables: L_i = sum_j S_ij z_j + b_i.
    std::vector<Poly> image;
    image.reserve(n);
    for (int i = 0; i < n; ++i) {
        Poly li(n);
        for (int j = 0; j < n; ++j)
            li = li + Poly::variable(n, j).scaled(S[i][j]);
        li = li + Poly::constant(n, b[i]);
        image.push_back(std::move(li));
    }

    // Powers of each image are cached as terms request them.
    std::vector<std::vector<Poly>> powers(n, {Poly::constant(n, 1)});
    auto image_pow = [&](int i, int k) -> const Poly& {
        auto& cache = powers[i];
        while (static_cast<int>(cache.size()) <= k)
            cache.push_back(cache.back() * image[i]);
        return cache[k];
    };

    Poly r(n);
    for (const auto& [e, c] : p.terms()) {
        Poly m = Poly::constant(n, c);
        for (int i = 0; i < n; ++i)
            if (e[i] > 0)
                m = m * image_pow(i, e[i]);
        r = r + m;
    }
    return r;
}

RationalFn::RationalFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (num_.nvars() != den_.nvars())
        throw DimensionMismatch("numerator and denominator variable spaces differ");
    if (den_.is_zero())
        throw DimensionMismatch("rational function with zero denominator polynomial");
}

RationalFn RationalFn::one(int nvars) {
    return RationalFn(Poly::constant(nvars, 1), Poly::constant(nvars, 1));
}

RationalFn RationalFn::from_poly(Poly p) {
    const int n = p.nvars();
    return RationalFn(std::move(p), Poly::constant(n, 1));
}

double RationalFn::eval(std::span<const double> point) const {
    const double d = den_.eval(point);
    if (d == 0.0)
        throw DenominatorVanishes("denominator vanishes at evaluation point",
                                  std::vector<double>(point.begin(), point.end()));
    return num_.eval(point) / d;
}

Rational RationalFn::eval_exact(const RationalVector& point) const {
    const Rational d = den_.eval_exact(point);
    if (d == 0) {
        std::vector<double> p(point.size());
        for (size_t i = 0; i < point.size(); ++i)
            p[i] = to_double(point[i]);
        throw DenominatorVanishes("denominator vanishes at evaluation point", p);
    }
    return num_.eval_exact(point) / d;
}

RationalFn RationalFn::operator*(const RationalFn& r) const {
    return RationalFn(num_ * r.num_, den_ * r.den_);
}

bool RationalFn::equals(const RationalFn& r) const {
    return num_ * r.den_ == r.num_ * den_;
}

std::string RationalFn::str(std::span<const std::string> var_names) const {
    return "(" + num_.str(var_names) + ") / (" + den_.str(var_names) + ")";
}

} // namespace isoperiod
