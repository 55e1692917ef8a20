#pragma once

#include <functional>

namespace hetnet::specfun {

struct QuadratureSpec {
    double rel_tol = 1.0e-9;
    double abs_tol = 1.0e-12;
    int max_subdivisions = 2000;
    // Plane integrals stop extending once an outer annulus contributes less
    // than this fraction of the accumulated value twice in a row.
    double truncation_threshold = 1.0e-9;
};

// Gauss(7)/Kronrod(15) adaptive quadrature of f over [a, b].
// Throws std::runtime_error when the subdivision budget is exhausted
// before the tolerance is met.
double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    const QuadratureSpec& q = {});

// Integral of f(r, phi) over the plane in polar measure r dr dphi.
// When radial is true, f is evaluated at phi = 0 only and the angular
// integral contributes a factor 2*pi. The truncation radius grows from
// r_scale_hint by doubling until the tail is negligible.
double integrate_plane(const std::function<double(double, double)>& f,
                       const QuadratureSpec& q = {}, bool radial = true,
                       double r_scale_hint = 1.0);

// Gauss hypergeometric 2F1(1, b; b+1; x) for b in (0,1) and x <= 0.
// This is the only parameter family the interference transforms need:
// b = 1 - 2/alpha, c = b + 1.
//
// Three regimes keep the series short and cancellation-free:
//   |x| <= 1/2          direct series, ratio |x|
//   1/2 < -x <= 32      Pfaff-transformed series in w = x/(x-1) in (1/3, 0.97]
//   -x > 32             split of the defining integral b*I(0,1) t^{b-1}/(1-xt) dt
//                       into the full Mellin value minus a convergent tail series
// The identity 2F1(1, 1/2; 3/2; -t^2) = atan(t)/t pins all three branches.
double hyp2f1_neg(double b, double c, double x);

}  // namespace hetnet::specfun
