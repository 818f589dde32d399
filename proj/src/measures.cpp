#include "stackshift/measures.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "stackshift/kernel_checks.hpp"
#include "stackshift/quadrature.hpp"

namespace stackshift::measures {

MeasureSpec MeasureSpec::dirac() { return {}; }

MeasureSpec MeasureSpec::atoms(double a) {
    if (!(a > 0)) throw std::invalid_argument("atoms: spacing must be positive");
    MeasureSpec m;
    m.kind_ = MeasureKind::atoms;
    m.param_ = a;
    return m;
}

MeasureSpec MeasureSpec::gaussian(double sigma) {
    if (!(sigma > 0)) throw std::invalid_argument("gaussian: sigma must be positive");
    MeasureSpec m;
    m.kind_ = MeasureKind::gaussian;
    m.param_ = sigma;
    return m;
}

MeasureSpec MeasureSpec::triangle() {
    MeasureSpec m;
    m.kind_ = MeasureKind::triangle;
    return m;
}

MeasureSpec MeasureSpec::bspline(long J) {
    if (J < 1 || J > 8) throw std::invalid_argument("bspline: J must be in 1..8");
    MeasureSpec m;
    m.kind_ = MeasureKind::bspline;
    m.bspline_j_ = J;
    return m;
}

MeasureSpec MeasureSpec::parse(const std::string& text) {
    auto colon = text.find(':');
    std::string name = text.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
    auto numeric_arg = [&](const std::string& key) {
        std::string prefix = key + "=";
        if (args.rfind(prefix, 0) != 0)
            throw std::invalid_argument("measure: expected " + prefix + "... in '" +
                                        text + "'");
        return std::stod(args.substr(prefix.size()));
    };
    if (name == "dirac") return dirac();
    if (name == "atoms") return atoms(args.empty() ? 1.0 : numeric_arg("a"));
    if (name == "gaussian") return gaussian(args.empty() ? 1.0 : numeric_arg("sigma"));
    if (name == "triangle") return triangle();
    if (name == "bspline")
        return bspline(args.empty() ? 3 : static_cast<long>(numeric_arg("J")));
    throw std::invalid_argument("measure: unknown kind '" + text + "'");
}

std::string MeasureSpec::to_string() const {
    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%g", v);
        return std::string(buf);
    };
    switch (kind_) {
        case MeasureKind::dirac: return "dirac";
        case MeasureKind::atoms: return "atoms:a=" + fmt(param_);
        case MeasureKind::gaussian: return "gaussian:sigma=" + fmt(param_);
        case MeasureKind::triangle: return "triangle";
        case MeasureKind::bspline: return "bspline:J=" + std::to_string(bspline_j_);
    }
    return "?";
}

double MeasureSpec::total_mass() const {
    return kind_ == MeasureKind::atoms ? 4.0 : 1.0;
}

std::vector<std::pair<double, double>> MeasureSpec::atom_list() const {
    switch (kind_) {
        case MeasureKind::dirac: return {{0.0, 1.0}};
        case MeasureKind::atoms:
            return {{-param_, 1.0}, {0.0, 2.0}, {param_, 1.0}};
        default:
            throw std::logic_error("atom_list: continuous measure");
    }
}

const polyexact::PiecewisePoly& MeasureSpec::bspline_density() const {
    static std::map<long, polyexact::PiecewisePoly> cache;
    auto it = cache.find(bspline_j_);
    if (it == cache.end()) {
        auto K = polyexact::triangle_kernel();
        it = cache.emplace(bspline_j_, polyexact::conv_power(K, bspline_j_)).first;
    }
    return it->second;
}

double MeasureSpec::density(double x) const {
    switch (kind_) {
        case MeasureKind::gaussian: {
            double z = x / param_;
            return std::exp(-0.5 * z * z) / (param_ * std::sqrt(2.0 * M_PI));
        }
        case MeasureKind::triangle: {
            double a = 1.0 - std::fabs(x);
            return a > 0 ? a : 0.0;
        }
        case MeasureKind::bspline:
            return bspline_density().eval_d(x);
        default:
            throw std::logic_error("density: atomic measure");
    }
}

double MeasureSpec::support_radius() const {
    switch (kind_) {
        case MeasureKind::dirac: return 0.0;
        case MeasureKind::atoms: return param_;
        case MeasureKind::gaussian: return std::numeric_limits<double>::infinity();
        case MeasureKind::triangle: return 1.0;
        case MeasureKind::bspline: return static_cast<double>(bspline_j_);
    }
    return 0.0;
}

double MeasureSpec::tail_mass(double X) const {
    if (kind_ == MeasureKind::gaussian)
        return std::erfc(X / (param_ * std::sqrt(2.0)));
    return X >= support_radius() ? 0.0 : total_mass();
}

double MeasureSpec::fhat(double t) const {
    switch (kind_) {
        case MeasureKind::dirac: return 1.0;
        case MeasureKind::atoms: return 2.0 + 2.0 * std::cos(param_ * t);
        case MeasureKind::gaussian: {
            double s = param_ * t;
            return std::exp(-0.5 * s * s);
        }
        case MeasureKind::triangle: {
            double s = sinc(t / 2.0);
            return s * s;
        }
        case MeasureKind::bspline:
            return std::pow(sinc(t / 2.0) * sinc(t / 2.0), static_cast<double>(bspline_j_));
    }
    return 0.0;
}

std::vector<MeasureSpec> default_catalog() {
    return {MeasureSpec::dirac(), MeasureSpec::atoms(1.0), MeasureSpec::gaussian(1.0),
            MeasureSpec::triangle(), MeasureSpec::bspline(3)};
}

}  // namespace stackshift::measures
