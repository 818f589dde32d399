#pragma once

#include <string>
#include <utility>
#include <vector>

#include "stackshift/piecewise_poly.hpp"

namespace stackshift::measures {

// Test-measure catalog. Every entry is a finite non-negative measure whose
// transform is analytically non-negative:
//   dirac     point mass at 0,               fhat = 1
//   atoms     masses 1,2,1 at -a, 0, a,      fhat = 2 + 2 cos(a t)
//   gaussian  N(0, sigma^2) density,         fhat = exp(-sigma^2 t^2 / 2)
//   triangle  density (1-|x|)^+,             fhat = sinc^2(t/2)
//   bspline   density K^{*J},                fhat = sinc^{2J}(t/2)
// The catalog is closed; arbitrary user measures are out of scope.
enum class MeasureKind { dirac, atoms, gaussian, triangle, bspline };

class MeasureSpec {
  public:
    static MeasureSpec dirac();
    static MeasureSpec atoms(double a);
    static MeasureSpec gaussian(double sigma);
    static MeasureSpec triangle();
    static MeasureSpec bspline(long J);

    // "dirac", "atoms:a=1", "gaussian:sigma=1", "triangle", "bspline:J=3"
    static MeasureSpec parse(const std::string& text);
    std::string to_string() const;

    MeasureKind kind() const { return kind_; }
    double total_mass() const;
    bool is_atomic() const {
        return kind_ == MeasureKind::dirac || kind_ == MeasureKind::atoms;
    }
    // (position, weight) list for atomic kinds.
    std::vector<std::pair<double, double>> atom_list() const;

    // density for the continuous kinds
    double density(double x) const;
    // smallest X with nu({|x| > X}) = 0, infinity for gaussian
    double support_radius() const;
    // upper bound on nu({|x| > X})
    double tail_mass(double X) const;

    double fhat(double t) const;

    double param() const { return param_; }
    long bspline_order() const { return bspline_j_; }

    // exact B-spline density, available for cross-checks
    const polyexact::PiecewisePoly& bspline_density() const;

  private:
    MeasureKind kind_ = MeasureKind::dirac;
    double param_ = 1.0;  // a for atoms, sigma for gaussian
    long bspline_j_ = 3;
};

// The default verification catalog.
std::vector<MeasureSpec> default_catalog();

}  // namespace stackshift::measures
