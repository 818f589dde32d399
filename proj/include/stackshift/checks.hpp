#pragma once

#include <utility>
#include <vector>

#include "stackshift/measures.hpp"
#include "stackshift/report.hpp"

namespace stackshift::verify {

// Two-sided window bound (both directions reported):
//   int sinc^2(Tu/2) nu(du)  <=  (1/T) int_{-T}^{T} fhat  <=  3 int sinc^2(Tu/2) nu(du)
std::pair<VerificationReport, VerificationReport> check_eq21(
    const measures::MeasureSpec& m, double T);

// Any-order lower bound:
//   int sinc^{2 kappa}(Tu/2) nu(du) <= (1/T) int_{-kappa T}^{kappa T} |fhat|
VerificationReport check_eq21nu(const measures::MeasureSpec& m, double T, long kappa);

// Transform identity, both routes evaluated independently.
VerificationReport check_kt1(const measures::MeasureSpec& m, double S, double gamma,
                             double T, long kappa);

// Block-k window bound: (1/2W) int_{-W}^{W} fhat <= p6_rhs(...).
VerificationReport check_p6(const measures::MeasureSpec& m, long k, double W,
                            long e_delta = 0);

// Proof-form chain with exact constants:
//   (1/T) int_{-2^{zeta_k} T}^{2^{zeta_k} T} fhat
//     <= 2 * 2^{zeta_k} * 2^{e_{R_k}-d_k+1} * 3^{2^{R_k}} * int |sinc(xT)|^{r_k^2} nu(dx)
// Also reports (diagnostic only) whether the combined constant stays below
// 2^{2^{(1+eps) r_k}}.
VerificationReport check_theorem_final(const measures::MeasureSpec& m, double T, long k,
                                       double epsilon);

struct SuiteConfig {
    std::vector<measures::MeasureSpec> catalog = measures::default_catalog();
    std::vector<double> eq21_T = {0.25, 1.0, 4.0};
    std::vector<long> eq21nu_kappa = {1, 2, 3};
    std::vector<double> kt1_T = {0.5, 1.0, 2.0};
    std::vector<double> kt1_shifts = {0.0, 0.3, 0.7};  // S and gamma grids
    std::vector<long> kt1_kappa = {1, 2};
    std::vector<long> p6_k = {1, 2};
    std::vector<double> p6_W = {0.5, 1.0, 4.0};
    std::vector<long> theorem_k = {1, 2};
    std::vector<double> theorem_T = {0.5, 1.0};
    double epsilon = 0.5;
    long growth_K = 0;  // 0 = largest block within the step budget
    long p5_exact_max_m = 3;
    long e_mutation = 0;  // perturbs the p6 constant exponent
    bool only_exact = false;
};

// Every check over the configured grids, in deterministic order.
std::vector<VerificationReport> run_suite(const SuiteConfig& config = {});

}  // namespace stackshift::verify
