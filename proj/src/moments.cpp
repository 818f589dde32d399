#include "stackshift/moments.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "stackshift/kernel_checks.hpp"
#include "stackshift/shift_multiset.hpp"

namespace stackshift::measures {
namespace {

constexpr double kWindowRelTol = 1e-10;
constexpr double kMomentRelTol = 1e-8;

double gaussian_cutoff(const MeasureSpec& m) {
    // erfc(9/sqrt(2)) ~ 2e-19: negligible against every tolerance in use
    return 9.0 * m.param();
}

QuadratureResult atomic_sum(const MeasureSpec& m,
                            const std::function<double(double)>& f) {
    QuadratureResult r;
    double abssum = 0.0;
    for (const auto& [x, w] : m.atom_list()) {
        double term = w * f(x);
        r.value += term;
        abssum += std::fabs(term);
        r.evaluations += 1;
    }
    r.abs_error_estimate = 8e-16 * abssum;
    return r;
}

}  // namespace

QuadratureResult fhat_window_integral_quad(const MeasureSpec& m, double W) {
    auto f = [&m](double t) { return m.fhat(t); };
    return integrate_even(f, W, 0.0, kWindowRelTol);
}

QuadratureResult fhat_window_integral(const MeasureSpec& m, double W) {
    if (!(W > 0)) throw std::invalid_argument("fhat_window_integral: W must be positive");
    QuadratureResult r;
    switch (m.kind()) {
        case MeasureKind::dirac:
            r.value = 2.0 * W;
            r.evaluations = 0;
            return r;
        case MeasureKind::atoms: {
            double a = m.param();
            r.value = 4.0 * W + 4.0 / a * std::sin(a * W);
            r.abs_error_estimate = 4e-16 * (4.0 * W + 4.0 / a);
            return r;
        }
        case MeasureKind::gaussian: {
            double s = m.param();
            r.value = std::sqrt(2.0) / s * std::sqrt(M_PI) * std::erf(s * W / std::sqrt(2.0));
            r.abs_error_estimate = 4e-16 * r.value;
            return r;
        }
        default:
            return fhat_window_integral_quad(m, W);
    }
}

QuadratureResult sinc_moment(const MeasureSpec& m, double T, long n) {
    if (!(T > 0)) throw std::invalid_argument("sinc_moment: T must be positive");
    if (n < 1) throw std::invalid_argument("sinc_moment: n must be positive");
    auto power = [T, n](double x) {
        double s = sinc(x * T);
        if (s == 0.0) return 0.0;
        return std::exp(static_cast<double>(n) * std::log(std::fabs(s)));
    };
    if (m.is_atomic()) return atomic_sum(m, power);

    double X = std::isfinite(m.support_radius()) ? m.support_radius()
                                                 : gaussian_cutoff(m);
    auto f = [&](double x) { return power(x) * m.density(x); };
    QuadratureResult r = integrate_even(f, X, 0.0, kMomentRelTol);
    r.truncation_bound = m.tail_mass(X);
    return r;
}

QuadratureResult p6_rhs(const MeasureSpec& m, const indexcalc::StackState& state,
                        double W, long e_delta, long block_limit) {
    if (!(W > 0)) throw std::invalid_argument("p6_rhs: W must be positive");
    if (state.m() == 0 || !state.at_block_boundary())
        throw std::invalid_argument("p6_rhs: state is not at a block boundary");
    const long k = state.block();
    if (k > block_limit)
        throw BudgetError("p6_rhs: block " + std::to_string(k) +
                          " beyond configured limit " + std::to_string(block_limit));

    // constant exponent from the state's own history
    BigInt e = 1, p = 1;
    for (long kk : state.scale_history()) {
        e = 2 * e + kk * p;
        p *= 2;
    }
    e += e_delta;
    const BigInt d = state.weighted_degree();
    const BigInt expo = e - d + 1;
    const Rational constant = pow2_rational(expo.get_si());

    const indexcalc::ShiftMultiset ms{state.scale_history()};
    const auto hist = indexcalc::scale_histogram(ms);

    struct SincFactor {
        double inv_scale;  // 2W / 2^j
        double c;          // multiplicity as double
        bool odd;
    };
    std::vector<SincFactor> factors;
    for (const auto& [j, c] : state.entries())
        factors.push_back({std::ldexp(2.0 * W, static_cast<int>(-j)), c.get_d(),
                           mpz_odd_p(c.get_mpz_t()) != 0});

    auto integrand_unweighted = [&](double x) {
        double log_abs = 0.0;
        int sign = 1;
        for (const auto& f : factors) {
            double s = sinc(f.inv_scale * x);
            if (s == 0.0) return 0.0;
            log_abs += f.c * std::log(std::fabs(s));
            if (s < 0.0 && f.odd) sign = -sign;
        }
        auto esum = indexcalc::exp_sum_from_histogram(hist, 2.0 * W * x);
        if (esum.is_zero) return 0.0;
        return sign * std::exp(log_abs + esum.log_abs);
    };

    if (m.kind() == MeasureKind::dirac) {
        // everything is exact at the single atom x = 0
        QuadratureResult r;
        const BigInt card = bigint_pow(3, 1UL << static_cast<unsigned long>(state.m()));
        r.value = Rational(constant * card).get_d();
        r.evaluations = 1;
        return r;
    }
    const double const_d = constant.get_d();
    if (m.is_atomic()) {
        QuadratureResult r = atomic_sum(m, integrand_unweighted);
        r.value *= const_d;
        r.abs_error_estimate *= const_d;
        return r;
    }

    // verify evenness of the integrand before exploiting it
    for (double x : {0.37, 1.91, 3.3}) {
        double a = integrand_unweighted(x), b = integrand_unweighted(-x);
        if (std::fabs(a - b) > 1e-12 * std::max(1.0, std::fabs(a)))
            throw AccuracyError("p6_rhs: integrand failed the symmetry check");
    }

    // |E| <= 3^{2^m} everywhere, so the gaussian cutoff has to be pushed
    // until the density tail swamps that factor.
    double X = std::isfinite(m.support_radius()) ? m.support_radius()
                                                 : 20.0 * m.param();
    auto f = [&](double x) { return integrand_unweighted(x) * m.density(x); };
    QuadratureResult r = integrate_even(f, X, 0.0, 1e-9);
    const double esup = std::exp(std::ldexp(1.0, static_cast<int>(state.m())) * std::log(3.0));
    r.truncation_bound = const_d * esup * m.tail_mass(X);
    r.value *= const_d;
    r.abs_error_estimate *= const_d;
    return r;
}

namespace {

const polyexact::PiecewisePoly& bspline_kernel(long kappa) {
    static std::map<long, polyexact::PiecewisePoly> cache;
    auto it = cache.find(kappa);
    if (it == cache.end())
        it = cache.emplace(kappa, polyexact::conv_power(polyexact::triangle_kernel(), kappa))
                 .first;
    return it->second;
}

}  // namespace

ParsevalSides parseval_sides(const MeasureSpec& m, double S, double gamma, double T,
                             long kappa) {
    if (!(T > 0)) throw std::invalid_argument("parseval_sides: T must be positive");
    if (kappa < 1 || kappa > 4)
        throw std::invalid_argument("parseval_sides: kappa must be in 1..4");
    ParsevalSides out;

    auto sinc_pow = [T, gamma, kappa](double u) {
        double s = sinc(T * (u - gamma) / 2.0);
        if (s == 0.0) return 0.0;
        return std::exp(2.0 * static_cast<double>(kappa) * std::log(std::fabs(s)));
    };

    if (m.is_atomic()) {
        double abssum = 0.0;
        for (const auto& [x, w] : m.atom_list()) {
            double mag = w * sinc_pow(x);
            out.lhs += mag * std::complex<double>(std::cos(S * x), std::sin(S * x));
            abssum += std::fabs(mag);
        }
        out.error += 8e-16 * abssum;
    } else {
        double X = std::isfinite(m.support_radius()) ? m.support_radius()
                                                     : gaussian_cutoff(m);
        auto re = [&](double u) { return sinc_pow(u) * std::cos(S * u) * m.density(u); };
        auto im = [&](double u) { return sinc_pow(u) * std::sin(S * u) * m.density(u); };
        auto rre = integrate(re, -X, X, 1e-12, 1e-9);
        auto rim = integrate(im, -X, X, 1e-12, 1e-9);
        out.lhs = {rre.value, rim.value};
        out.error += rre.abs_error_estimate + rim.abs_error_estimate + m.tail_mass(X);
    }

    const auto& kk = bspline_kernel(kappa);
    auto kernel_part = [&](double y) {
        return kk.eval_d((y - S) / T) * m.fhat(y);
    };
    auto re = [&](double y) { return kernel_part(y) * std::cos(-gamma * (y - S)); };
    auto im = [&](double y) { return kernel_part(y) * std::sin(-gamma * (y - S)); };
    const double lo = S - kappa * T, hi = S + kappa * T;
    auto rre = integrate(re, lo, hi, 1e-12, 1e-9);
    auto rim = integrate(im, lo, hi, 1e-12, 1e-9);
    out.rhs = std::complex<double>(rre.value, rim.value) / T;
    out.error += (rre.abs_error_estimate + rim.abs_error_estimate) / T;
    return out;
}

}  // namespace stackshift::measures
