#pragma once

#include <optional>

#include "stackshift/piecewise_poly.hpp"

namespace stackshift::polyexact {

// A point where the certified inequality fails.
struct Witness {
    Rational x;
    Rational value;
};

struct CertResult {
    bool nonneg = false;
    std::optional<Witness> witness;  // set on failure
};

// gcd of p and q (monic), by exact Euclidean remainders.
Poly poly_gcd(Poly a, Poly b);

// Number of distinct real roots in the open interval (a, b).
long count_roots_open(const Poly& p, const Rational& a, const Rational& b);

// Exact proof that p >= 0 everywhere on [a, b], or a rational witness with
// p(witness) < 0. Sturm root counting plus endpoint signs; even-order
// touch points are accepted.
CertResult certify_nonnegative_on(const Poly& p, const Rational& a, const Rational& b);

// Per-piece certificate over the whole line (zero outside the support).
CertResult certify_nonnegative(const PiecewisePoly& f);

}  // namespace stackshift::polyexact
