#pragma once

#include <string>
#include <vector>

#include "stackshift/piecewise_poly.hpp"
#include "stackshift/sturm.hpp"

namespace stackshift::polyexact {

// Result of a certified check over the rationals. Exact results carry no
// numeric error budget at all.
struct CertReport {
    std::string id;
    bool pass = false;
    bool exact = true;
    std::optional<Witness> witness;
    std::string detail;
};

// chi_[-1/2, 1/2]; the unit box every construction starts from.
PiecewisePoly unit_box();

// Triangle kernel (1 - |t|)^+ = unit_box * unit_box.
PiecewisePoly triangle_kernel();

// Dilated box T_{2^-k}(unit box), support [-2^-(k+1), 2^-(k+1)].
PiecewisePoly dyadic_box(long k);

// Bound constant for convolutions of boxes with halfwidths A_1<=...<=A_J:
//   G_J = 2^J A_1 ((A_1+A_2)^A_3) ((A_1+A_2+A_3)^A_4) ... ((A_1+..+A_{J-1})^A_J)
// where ^ is min. Throws std::invalid_argument for unsorted or
// non-positive input.
Rational gj_bound(const std::vector<Rational>& halfwidths);

// Certifies 0 <= density(mu_{A_1} * ... * mu_{A_J}) <= G_J on the support.
CertReport check_convelem(const std::vector<Rational>& halfwidths);

// Certifies the box-box convolution density against its closed form
// (rise x+A+B, plateau 2A, fall A+B-x on [-A-B, A+B], with A <= B).
CertReport check_convel(const Rational& A, const Rational& B);

// Certifies 0 <= K^{*J} <= 1 with support exactly [-J, J].
CertReport check_kappaj(long J);

// Certifies that the three shifted triangles K_T(t), K_T(t+T), K_T(t-T)
// sum to exactly 1 on [-T, T].
CertReport check_kt_partition(const Rational& T);

// Certifies chi(x) <= K(2x) + K(2x+1) + K(2x-1) everywhere (the seed
// inequality of the whole construction).
CertReport verify_conv01();

enum class P5Mode { exact, sampled };

struct P5Report {
    long m = 0;
    P5Mode mode = P5Mode::exact;
    bool pass = false;
    bool exact = true;
    std::optional<Witness> witness;
    double min_margin = 0.0;  // sampled mode: smallest RHS - LHS over the grid
    long grid_points = 0;
    std::string detail;
};

// The convolution product prod* g_j^{* c_j} over the step-m configuration.
PiecewisePoly p5_product(long m);

// Certifies chi(x) <= 2^{e_m} * sum of shifted products over the step-m
// offset multiset. Exact mode (m <= 3) produces a per-piece certificate;
// sampled mode (m <= 6) reports grid margins over [-3/5, 3/5].
P5Report verify_p5(long m, P5Mode mode, long grid_points = 4096);

}  // namespace stackshift::polyexact
