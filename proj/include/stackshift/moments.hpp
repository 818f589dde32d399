#pragma once

#include <complex>

#include "stackshift/measures.hpp"
#include "stackshift/quadrature.hpp"
#include "stackshift/stack_state.hpp"

namespace stackshift::measures {

// integral of fhat over [-W, W]; closed form for dirac/atoms/gaussian,
// adaptive quadrature otherwise (relative tolerance 1e-10).
QuadratureResult fhat_window_integral(const MeasureSpec& m, double W);

// Quadrature-only route, for checking the engine against closed forms.
QuadratureResult fhat_window_integral_quad(const MeasureSpec& m, double W);

// integral of |sinc(x T)|^n nu(dx), powers evaluated in log space
// (relative tolerance 1e-8).
QuadratureResult sinc_moment(const MeasureSpec& m, double T, long n);

// Right-hand side of the block-k window bound:
//   2^{e_{R_k} - d_k + 1} * int prod_j sinc(2Wx/2^j)^{c_j} |E(2Wx)| nu(dx)
// with E the exponential sum of the step-R_k offset multiset. The state
// must sit at a block boundary with k <= block_limit. `e_delta` perturbs
// the constant exponent (used by the mutation sensitivity check).
QuadratureResult p6_rhs(const MeasureSpec& m, const indexcalc::StackState& state,
                        double W, long e_delta = 0, long block_limit = 3);

struct ParsevalSides {
    std::complex<double> lhs;  // sinc-power moment against nu
    std::complex<double> rhs;  // windowed transform integral against fhat
    double error = 0.0;        // combined quadrature error estimate

    double discrepancy() const { return std::abs(lhs - rhs); }
    double scale() const { return std::max(std::abs(lhs), std::abs(rhs)); }
};

// Both routes of the transform identity
//   int sinc(T(u-gamma)/2)^{2 kappa} e^{iSu} nu(du)
//     = (1/T) int e^{-i gamma (y-S)} K^{* kappa}((y-S)/T) fhat(y) dy
// evaluated independently (x-space against nu, y-space against fhat).
ParsevalSides parseval_sides(const MeasureSpec& m, double S, double gamma, double T,
                             long kappa);

}  // namespace stackshift::measures
