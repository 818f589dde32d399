#include "stackshift/quadrature.hpp"

#include <cmath>
#include <vector>

namespace stackshift::measures {
namespace {

// 15-point Kronrod extension of 7-point Gauss on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
    double integral;
    double error;
    double resabs;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kXgk[i]);
        fv[14 - i] = f(c + h * kXgk[i]);
    }
    fv[7] = f(c);
    double kron = 0.0, gauss = 0.0, resabs = 0.0;
    for (int i = 0; i < 7; ++i) {
        double pair = fv[i] + fv[14 - i];
        kron += kWgk[i] * pair;
        resabs += kWgk[i] * (std::fabs(fv[i]) + std::fabs(fv[14 - i]));
        if (i % 2 == 1) gauss += kWg[i / 2] * pair;
    }
    kron += kWgk[7] * fv[7];
    resabs += kWgk[7] * std::fabs(fv[7]);
    gauss += kWg[3] * fv[7];
    return {kron * h, std::fabs(kron - gauss) * h, resabs * h};
}

struct Kahan {
    double sum = 0.0, comp = 0.0;
    void add(double v) {
        double y = v - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

}  // namespace

double sinc(double u) {
    if (std::fabs(u) < 1e-8) return 1.0 - u * u / 6.0;
    return std::sin(u) / u;
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol, double rel_tol, long max_evals) {
    QuadratureResult out;
    if (!(a < b)) return out;

    // coarse pass fixes the tolerance scale
    constexpr int kCoarse = 8;
    double rough = 0.0, resabs = 0.0;
    for (int i = 0; i < kCoarse; ++i) {
        double u = a + (b - a) * i / kCoarse;
        double v = a + (b - a) * (i + 1) / kCoarse;
        auto pr = gk15(f, u, v);
        rough += pr.integral;
        resabs += pr.resabs;
    }
    out.evaluations = 15 * kCoarse;
    const double scale = std::max(std::fabs(rough), 1e-3 * resabs);
    const double tol = std::max(abs_tol, rel_tol * scale);

    struct Frame {
        double a, b, tol;
        int depth;
    };
    Kahan value, error;
    std::vector<Frame> stack{{a, b, tol, 0}};
    while (!stack.empty()) {
        Frame fr = stack.back();
        stack.pop_back();
        auto pr = gk15(f, fr.a, fr.b);
        out.evaluations += 15;
        if (pr.error <= fr.tol || fr.depth >= 48) {
            value.add(pr.integral);
            error.add(pr.error + 5e-16 * pr.resabs);
            continue;
        }
        if (out.evaluations > max_evals)
            throw AccuracyError("integrate: evaluation budget exhausted before tolerance");
        double mid = 0.5 * (fr.a + fr.b);
        // left first; LIFO order keeps the reduction deterministic
        stack.push_back({mid, fr.b, fr.tol / 2, fr.depth + 1});
        stack.push_back({fr.a, mid, fr.tol / 2, fr.depth + 1});
    }
    out.value = value.sum;
    out.abs_error_estimate = error.sum;
    if (out.abs_error_estimate > std::max(abs_tol, rel_tol * std::fabs(out.value)) * 4.0 &&
        out.abs_error_estimate > 1e-13 * resabs)
        throw AccuracyError("integrate: tolerance not met");
    return out;
}

QuadratureResult integrate_even(const std::function<double(double)>& f, double X,
                                double abs_tol, double rel_tol, long max_evals) {
    QuadratureResult r = integrate(f, 0.0, X, abs_tol / 2, rel_tol, max_evals);
    r.value *= 2.0;
    r.abs_error_estimate *= 2.0;
    return r;
}

}  // namespace stackshift::measures
