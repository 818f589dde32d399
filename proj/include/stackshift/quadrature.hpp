#pragma once

#include <functional>

#include "stackshift/rational.hpp"

namespace stackshift::measures {

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    double truncation_bound = 0.0;
    long evaluations = 0;

    bool meets(double abs_tol) const {
        return abs_error_estimate + truncation_bound <= abs_tol;
    }
};

// Adaptive Gauss-Kronrod 7/15 over [a, b]. Panels are bisected until the
// local |K15 - G7| estimate fits the proportional share of the tolerance;
// recursion order and Kahan accumulation are fixed, so results are
// bit-reproducible. Throws AccuracyError when the budget runs out before
// the tolerance is met.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol, double rel_tol, long max_evals = 2'000'000);

// 2 * integral over [0, X] for even integrands.
QuadratureResult integrate_even(const std::function<double(double)>& f, double X,
                                double abs_tol, double rel_tol,
                                long max_evals = 2'000'000);

// sin(u)/u with the removable singularity filled in.
double sinc(double u);

}  // namespace stackshift::measures
