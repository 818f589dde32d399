#include "stackshift/shift_multiset.hpp"

#include <cmath>
#include <stdexcept>

#include "stackshift/sequences.hpp"

namespace stackshift::indexcalc {

double SignedLog::value() const {
    if (is_zero) return 0.0;
    return sign * std::exp(log_abs);
}

SignedLog& SignedLog::operator*=(const SignedLog& o) {
    if (is_zero || o.is_zero) {
        is_zero = true;
        return *this;
    }
    log_abs += o.log_abs;
    sign *= o.sign;
    return *this;
}

SignedLog signed_log_of(double x) {
    if (x == 0.0) return {0.0, 1, true};
    return {std::log(std::fabs(x)), x > 0 ? 1 : -1, false};
}

ShiftMultiset shift_multiset(long m, long budget) {
    if (m < 0) throw std::invalid_argument("shift_multiset: negative m");
    ShiftMultiset ms;
    if (m > 0) ms.scale_exponents = run_trace(m, budget).consumed;
    return ms;
}

std::map<long, BigInt> scale_histogram(const ShiftMultiset& ms) {
    std::vector<BigInt> coef{1};
    for (long k : ms.scale_exponents) {
        std::vector<BigInt> next(coef.size() + static_cast<size_t>(k), 0);
        for (size_t e = 0; e < coef.size(); ++e) {
            next[e] += coef[e];
            next[e + static_cast<size_t>(k)] += coef[e];
        }
        coef = std::move(next);
    }
    std::map<long, BigInt> hist;
    for (size_t e = 0; e < coef.size(); ++e)
        if (coef[e] != 0) hist[static_cast<long>(e)] = coef[e];
    return hist;
}

SignedLog exp_sum_from_histogram(const std::map<long, BigInt>& hist, double x) {
    SignedLog total{0.0, 1, false};
    for (const auto& [e, count] : hist) {
        double factor = 1.0 + 2.0 * std::cos(std::ldexp(x, static_cast<int>(-e - 1)));
        if (factor == 0.0) return {0.0, 1, true};
        total.log_abs += count.get_d() * std::log(std::fabs(factor));
        if (factor < 0.0 && mpz_odd_p(count.get_mpz_t())) total.sign = -total.sign;
    }
    return total;
}

SignedLog exp_sum(const ShiftMultiset& ms, double x) {
    return exp_sum_from_histogram(scale_histogram(ms), x);
}

std::vector<std::pair<Rational, BigInt>> expand_offsets(const ShiftMultiset& ms) {
    if (ms.m() > 12)
        throw BudgetError("expand_offsets: offset grid too large for m=" +
                          std::to_string(ms.m()));
    auto hist = scale_histogram(ms);
    const long emax = hist.empty() ? 0 : hist.rbegin()->first;
    // Offsets live on the grid Z / 2^(emax+1); track coefficients of the
    // product of trinomials (y^-n + 1 + y^n) centered at index `center`.
    long half_range = 0;
    for (const auto& [e, count] : hist) {
        long n = 1L << (emax - e);
        half_range += n * count.get_si();
    }
    std::vector<BigInt> coef(static_cast<size_t>(2 * half_range + 1), 0);
    const long center = half_range;
    coef[static_cast<size_t>(center)] = 1;
    long reach = 0;  // current support is [center-reach, center+reach]
    for (const auto& [e, count] : hist) {
        const long n = 1L << (emax - e);
        for (BigInt i = 0; i < count; ++i) {
            std::vector<BigInt> next(coef.size(), 0);
            for (long p = center - reach; p <= center + reach; ++p) {
                const BigInt& v = coef[static_cast<size_t>(p)];
                if (v == 0) continue;
                next[static_cast<size_t>(p - n)] += v;
                next[static_cast<size_t>(p)] += v;
                next[static_cast<size_t>(p + n)] += v;
            }
            coef = std::move(next);
            reach += n;
        }
    }
    const BigInt den = pow2(static_cast<unsigned long>(emax + 1));
    std::vector<std::pair<Rational, BigInt>> out;
    for (long p = 0; p < static_cast<long>(coef.size()); ++p) {
        if (coef[static_cast<size_t>(p)] == 0) continue;
        out.emplace_back(make_rational(BigInt(p - center), den),
                         coef[static_cast<size_t>(p)]);
    }
    return out;
}

}  // namespace stackshift::indexcalc
