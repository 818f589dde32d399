#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace stackshift {

using BigInt = mpz_class;
using Rational = mpq_class;

// mpq_class(n, d) does not canonicalize on its own; route constructions
// through here so the gcd/sign invariants always hold.
inline Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(BigInt(num), BigInt(den));
}

// Exact "num/den" string, canonical form ("0/1", "-3/4", "5/1").
inline std::string rational_to_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational rational_from_string(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("rational: cannot parse '" + s + "'");
    q.canonicalize();
    return q;
}

inline BigInt pow2(unsigned long e) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

inline BigInt bigint_pow(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// 2^e for a possibly negative exponent, as an exact rational.
inline Rational pow2_rational(long e) {
    if (e >= 0) return Rational(pow2(static_cast<unsigned long>(e)));
    return make_rational(BigInt(1), pow2(static_cast<unsigned long>(-e)));
}

struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AccuracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace stackshift
