#pragma once

#include <map>
#include <utility>
#include <vector>

#include "stackshift/rational.hpp"
#include "stackshift/stack_state.hpp"

namespace stackshift::indexcalc {

// Sign/magnitude value in log space. Products of many factors of wildly
// different scale stay representable; a single zero factor collapses the
// whole product.
struct SignedLog {
    double log_abs = 0.0;
    int sign = 1;  // +1 or -1; meaningless when is_zero
    bool is_zero = false;

    double value() const;
    SignedLog& operator*=(const SignedLog& o);
};

SignedLog signed_log_of(double x);

// Factorized shift multiset: I_m is the 2^m-fold multiset sum of dyadic
// dilates of the base triple {-1/2, 0, 1/2}, one dilate 2^{-sum(S)} per
// subset S of the scale exponents. Cardinality with repetition is 3^(2^m).
struct ShiftMultiset {
    std::vector<long> scale_exponents;  // k(1), ..., k(m)

    long m() const { return static_cast<long>(scale_exponents.size()); }
};

// Multiset for step m (scale exponents = consumed indices of the first m
// steps).
ShiftMultiset shift_multiset(long m, long budget = step_budget());

// N(e) = number of subsets of the scale exponents summing to e, by
// generating-function (knapsack) convolution. Counts sum to 2^m.
std::map<long, BigInt> scale_histogram(const ShiftMultiset& ms);

// E(x) = sum over rho in I_m of e^{-i rho x}, real by symmetry, evaluated
// through the factorization  E(x) = prod_e (1 + 2 cos(2^{-e} x/2))^{N(e)}.
SignedLog exp_sum(const ShiftMultiset& ms, double x);

// Same with the histogram precomputed (hot loops).
SignedLog exp_sum_from_histogram(const std::map<long, BigInt>& hist, double x);

// Distinct offsets of I_m with exact multiplicities, ascending. The
// multiplicities sum to 3^(2^m).
std::vector<std::pair<Rational, BigInt>> expand_offsets(const ShiftMultiset& ms);

}  // namespace stackshift::indexcalc
