#include "stackshift/kernel_checks.hpp"

#include <sstream>
#include <stdexcept>

#include "stackshift/sequences.hpp"
#include "stackshift/shift_multiset.hpp"
#include "stackshift/stack_state.hpp"

namespace stackshift::polyexact {

PiecewisePoly unit_box() { return PiecewisePoly::indicator(make_rational(1, 2)); }

PiecewisePoly triangle_kernel() {
    // (1 - |t|)^+ spelled out; convolve(unit_box, unit_box) equals this and
    // tests assert it.
    return PiecewisePoly({-1, 0, 1},
                         {Poly{Rational(1), Rational(1)}, Poly{Rational(1), Rational(-1)}});
}

PiecewisePoly dyadic_box(long k) {
    return dilate(unit_box(), pow2_rational(-k));
}

Rational gj_bound(const std::vector<Rational>& A) {
    const size_t J = A.size();
    if (J < 2) throw std::invalid_argument("gj_bound: need at least two factors");
    for (size_t i = 0; i < J; ++i) {
        if (A[i] <= 0) throw std::invalid_argument("gj_bound: halfwidths must be positive");
        if (i > 0 && A[i] < A[i - 1])
            throw std::invalid_argument("gj_bound: halfwidths must be ascending");
    }
    Rational g = pow2_rational(static_cast<long>(J)) * A[0];
    Rational partial = A[0] + A[1];
    for (size_t j = 2; j < J; ++j) {
        g *= std::min(partial, A[j]);
        partial += A[j];
    }
    return g;
}

namespace {

PiecewisePoly box_chain_density(const std::vector<Rational>& halfwidths) {
    PiecewisePoly density = PiecewisePoly::indicator(halfwidths.at(0));
    for (size_t j = 1; j < halfwidths.size(); ++j)
        density = convolve(density, PiecewisePoly::indicator(halfwidths[j]));
    return density;
}

CertReport from_cert(std::string id, const CertResult& c, std::string detail) {
    CertReport r;
    r.id = std::move(id);
    r.pass = c.nonneg;
    r.witness = c.witness;
    r.detail = std::move(detail);
    return r;
}

}  // namespace

CertReport check_convelem(const std::vector<Rational>& halfwidths) {
    const Rational g = gj_bound(halfwidths);
    PiecewisePoly density = box_chain_density(halfwidths);
    Rational radius = 0;
    for (const auto& a : halfwidths) radius += a;

    auto lower = certify_nonnegative(density);
    if (!lower.nonneg) return from_cert("convelem", lower, "density >= 0 failed");
    auto span = density.support();
    if (!span || span->first != -radius || span->second != radius) {
        CertReport r;
        r.id = "convelem";
        r.pass = false;
        r.detail = "support mismatch";
        return r;
    }
    PiecewisePoly bound = PiecewisePoly::constant_on(-radius, radius, g);
    auto upper = certify_nonnegative(bound - density);
    std::ostringstream det;
    det << "J=" << halfwidths.size() << " G=" << rational_to_string(g);
    return from_cert("convelem", upper, det.str());
}

CertReport check_convel(const Rational& A, const Rational& B) {
    if (A <= 0 || B < A)
        throw std::invalid_argument("check_convel: need 0 < A <= B");
    PiecewisePoly got =
        convolve(PiecewisePoly::indicator(A), PiecewisePoly::indicator(B));
    // rise x + (A+B), plateau 2A, fall (A+B) - x
    std::vector<Rational> bp{-(A + B), -(B - A), B - A, A + B};
    std::vector<Poly> pieces{Poly{A + B, Rational(1)}, Poly{2 * A},
                             Poly{A + B, Rational(-1)}};
    if (A == B) {  // plateau degenerates
        bp = {-(A + B), Rational(0), A + B};
        pieces = {Poly{A + B, Rational(1)}, Poly{A + B, Rational(-1)}};
    }
    PiecewisePoly expect(bp, pieces);
    CertReport r;
    r.id = "convel";
    r.pass = (got == expect);
    r.detail = "A=" + rational_to_string(A) + " B=" + rational_to_string(B);
    return r;
}

CertReport check_kappaj(long J) {
    if (J < 1) throw std::invalid_argument("check_kappaj: J must be positive");
    PiecewisePoly K = convolve(unit_box(), unit_box());
    PiecewisePoly KJ = conv_power(K, J);
    auto span = KJ.support();
    CertReport r;
    r.id = "kappaj";
    r.detail = "J=" + std::to_string(J);
    if (!span || span->first != -J || span->second != J) {
        r.pass = false;
        r.detail += " support mismatch";
        return r;
    }
    auto lower = certify_nonnegative(KJ);
    if (!lower.nonneg) return from_cert("kappaj", lower, r.detail + " lower failed");
    PiecewisePoly one = PiecewisePoly::constant_on(-J, J, 1);
    return from_cert("kappaj", certify_nonnegative(one - KJ), r.detail);
}

CertReport check_kt_partition(const Rational& T) {
    if (T <= 0) throw std::invalid_argument("check_kt_partition: T must be positive");
    PiecewisePoly KT = dilate(triangle_kernel(), T);
    std::vector<std::pair<Rational, BigInt>> shifts{
        {-T, BigInt(1)}, {Rational(0), BigInt(1)}, {T, BigInt(1)}};
    PiecewisePoly s = shift_sum(KT, shifts);
    PiecewisePoly one = PiecewisePoly::constant_on(-T, T, 1);
    CertReport r;
    r.id = "KT";
    r.pass = (s.restricted(-T, T) == one);
    r.detail = "T=" + rational_to_string(T);
    return r;
}

CertReport verify_conv01() {
    PiecewisePoly K = convolve(unit_box(), unit_box());
    PiecewisePoly K2x = dilate(K, make_rational(1, 2));
    std::vector<std::pair<Rational, BigInt>> shifts{
        {make_rational(-1, 2), BigInt(1)},
        {Rational(0), BigInt(1)},
        {make_rational(1, 2), BigInt(1)}};
    PiecewisePoly rhs = shift_sum(K2x, shifts);
    return from_cert("conv01", certify_nonnegative(rhs - unit_box()),
                     "box vs three shifted triangles");
}

PiecewisePoly p5_product(long m) {
    auto state = indexcalc::iterate_to(m);
    PiecewisePoly prod;
    bool first = true;
    for (const auto& [j, c] : state.entries()) {
        PiecewisePoly factor = conv_power(dyadic_box(j), c.get_si());
        prod = first ? factor : convolve(prod, factor);
        first = false;
    }
    return prod;
}

P5Report verify_p5(long m, P5Mode mode, long grid_points) {
    P5Report rep;
    rep.m = m;
    rep.mode = mode;
    if (mode == P5Mode::exact && m > 3)
        throw BudgetError("verify_p5: exact mode limited to m <= 3");
    if (mode == P5Mode::sampled && m > 6)
        throw BudgetError("verify_p5: sampled mode limited to m <= 6");

    PiecewisePoly prod = p5_product(m);
    auto offsets = indexcalc::expand_offsets(indexcalc::shift_multiset(m));
    const BigInt e_m = indexcalc::constant_exponent(m);
    const Rational c_m = Rational(pow2(e_m.get_ui()));

    if (mode == P5Mode::exact) {
        PiecewisePoly rhs = shift_sum(prod, offsets).scaled(c_m);
        auto cert = certify_nonnegative(rhs - unit_box());
        rep.pass = cert.nonneg;
        rep.exact = true;
        rep.witness = cert.witness;
        std::ostringstream det;
        det << "C=2^" << e_m.get_str() << ", " << offsets.size()
            << " distinct offsets, certified per piece";
        rep.detail = det.str();
        return rep;
    }

    // Sampled: exact grid margins for small m, double evaluation beyond.
    rep.grid_points = grid_points;
    const Rational lo = make_rational(-3, 5), hi = make_rational(3, 5);
    if (m <= 4) {
        PiecewisePoly rhs = shift_sum(prod, offsets).scaled(c_m);
        PiecewisePoly diff = rhs - unit_box();
        Rational min_margin;
        bool first = true;
        for (long i = 0; i < grid_points; ++i) {
            Rational x = lo + (hi - lo) * Rational(i) / Rational(grid_points - 1);
            Rational v = diff(x);
            if (first || v < min_margin) min_margin = v;
            first = false;
        }
        rep.exact = true;
        rep.pass = min_margin >= 0;
        rep.min_margin = min_margin.get_d();
        rep.detail = "exact grid evaluation";
        return rep;
    }
    // Double path: rescale by 2^{d_m} first (the raw product mass is
    // 2^{-d_m}, far below double range for m >= 5); then the constant
    // collapses to 2^{e_m - d_m} = 2^{-2^m}.
    const BigInt d_m = indexcalc::run_trace(m).d[m];
    PiecewisePoly scaled = prod.scaled(Rational(pow2(d_m.get_ui())));
    const BigInt shift = e_m - d_m;
    const double factor = pow2_rational(shift.get_si()).get_d();
    double min_margin = 0.0;
    bool first = true;
    for (long i = 0; i < grid_points; ++i) {
        double x = -0.6 + 1.2 * static_cast<double>(i) / (grid_points - 1);
        double rhs = 0.0;
        for (const auto& [rho, n] : offsets)
            rhs += n.get_d() * scaled.eval_d(x + rho.get_d());
        double g = (x >= -0.5 && x <= 0.5) ? 1.0 : 0.0;
        double margin = factor * rhs - g;
        if (first || margin < min_margin) min_margin = margin;
        first = false;
    }
    rep.exact = false;
    rep.pass = min_margin >= -1e-9;
    rep.min_margin = min_margin;
    rep.detail = "double-precision grid evaluation";
    return rep;
}

}  // namespace stackshift::polyexact
