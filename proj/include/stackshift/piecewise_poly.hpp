#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stackshift/rational.hpp"

namespace stackshift::polyexact {

// Dense univariate polynomial, coefficients by ascending power.
using Poly = std::vector<Rational>;

Rational poly_eval(const Poly& p, const Rational& x);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, const Rational& c);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_derivative(const Poly& p);
Poly poly_antiderivative(const Poly& p);
// p(x + s)
Poly poly_taylor_shift(const Poly& p, const Rational& s);
void poly_trim(Poly& p);
long poly_degree(const Poly& p);  // -1 for the zero polynomial

// Compactly supported piecewise polynomial over the rationals. Value is 0
// outside [breakpoints.front(), breakpoints.back()]; piece i applies on
// [breakpoints[i], breakpoints[i+1]) and the last piece also at the right
// endpoint. Canonical form: strictly increasing breakpoints, no zero tail
// pieces, no mergeable neighbours; equality is structural.
class PiecewisePoly {
  public:
    PiecewisePoly() = default;  // zero function

    // Breakpoints b_0 < ... < b_n with pieces p_0..p_{n-1}; canonicalizes.
    PiecewisePoly(std::vector<Rational> breakpoints, std::vector<Poly> pieces);

    static PiecewisePoly zero() { return {}; }
    static PiecewisePoly constant_on(const Rational& lo, const Rational& hi,
                                     const Rational& value);
    // chi_[-A, A]; throws std::invalid_argument for A <= 0.
    static PiecewisePoly indicator(const Rational& halfwidth);

    bool is_zero() const { return pieces_.empty(); }
    const std::vector<Rational>& breakpoints() const { return breakpoints_; }
    const std::vector<Poly>& pieces() const { return pieces_; }
    long piece_count() const { return static_cast<long>(pieces_.size()); }
    long degree() const;

    // [support_lo, support_hi], or nullopt for the zero function.
    std::optional<std::pair<Rational, Rational>> support() const;

    Rational operator()(const Rational& x) const;
    double eval_d(double x) const;

    Rational integral() const;

    PiecewisePoly operator+(const PiecewisePoly& o) const;
    PiecewisePoly operator-(const PiecewisePoly& o) const;
    PiecewisePoly operator-() const;
    PiecewisePoly scaled(const Rational& c) const;
    // f(x + s)
    PiecewisePoly translated(const Rational& s) const;

    // Restriction to [lo, hi] (as a compactly supported function).
    PiecewisePoly restricted(const Rational& lo, const Rational& hi) const;

    bool operator==(const PiecewisePoly&) const = default;

    // Exact JSON with "num/den" strings; round-trip lossless.
    std::string to_json() const;
    static PiecewisePoly from_json(const std::string& text);

  private:
    void canonicalize();
    std::vector<Rational> breakpoints_;
    std::vector<Poly> pieces_;
};

// Exact convolution (f*h)(x) = int f(t) h(x-t) dt.
PiecewisePoly convolve(const PiecewisePoly& f, const PiecewisePoly& h);

// (T_a f)(x) = f(x/a); throws std::invalid_argument for a <= 0.
PiecewisePoly dilate(const PiecewisePoly& f, const Rational& a);

// sum over (offset rho, count n) of n * f(x + rho).
PiecewisePoly shift_sum(const PiecewisePoly& f,
                        std::span<const std::pair<Rational, BigInt>> shifts);

// n-fold convolution power; throws BudgetError when the breakpoint count
// would explode.
PiecewisePoly conv_power(const PiecewisePoly& f, long n);

}  // namespace stackshift::polyexact
