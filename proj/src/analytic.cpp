#include "hetnet/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hetnet/specfun.hpp"

namespace hetnet::analytic {

namespace {

using specfun::integrate_1d;

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// Rayleigh-fading interference kernel at link distance t: the per-point
// factor 1 - E_h[exp(-s P h t^-alpha)] = 1 / (1 + t^alpha / (sP)).
double fading_kernel(double t, double sP, double alpha) {
    return 1.0 / (1.0 + std::pow(t, alpha) / sP);
}

// Integral of the fading kernel over a ball of radius R_c whose center sits
// at distance d from the kernel origin. The angular coordinate integrates
// exactly to the arc angle of the circle of radius t inside the ball, which
// leaves one radial integral with a kink at |R_c - d|.
double ball_overlap(double s, double P, double alpha, double d, double R_c,
                    const QuadratureSpec& q) {
    if (s <= 0.0) return 0.0;
    const double sP = s * P;
    const auto arc = [&](double t) {
        if (d <= 1.0e-12) return t <= R_c ? 2.0 * M_PI : 0.0;
        if (t <= R_c - d) return 2.0 * M_PI;  // only reachable when d < R_c
        const double c = (t * t + d * d - R_c * R_c) / (2.0 * t * d);
        if (c >= 1.0) return 0.0;
        return 2.0 * std::acos(std::max(c, -1.0));
    };
    const auto f = [&](double t) { return arc(t) * fading_kernel(t, sP, alpha) * t; };
    const double lo = std::max(0.0, d - R_c);
    const double hi = d + R_c;
    const double kink = std::fabs(R_c - d);
    double total = 0.0;
    if (kink > lo && kink < hi) {
        total += integrate_1d(f, lo, kink, q);
        total += integrate_1d(f, kink, hi, q);
    } else {
        total += integrate_1d(f, lo, hi, q);
    }
    return total;
}

double full_plane_term(double s, double P, double alpha) {
    const double two_over_alpha = 2.0 / alpha;
    return std::pow(s * P, two_over_alpha) * M_PI * M_PI * two_over_alpha /
           std::sin(2.0 * M_PI / alpha);
}

double laplace_ppp_beyond(double s, double r, double lambda, double P,
                          double alpha) {
    if (s <= 0.0) return 1.0;
    if (r <= 0.0) return std::exp(-lambda * full_plane_term(s, P, alpha));
    const double b = 1.0 - 2.0 / alpha;
    const double hyp = specfun::hyp2f1_neg(b, b + 1.0, -s * P * std::pow(r, -alpha));
    const double expo = s * M_PI * lambda * P * (2.0 / alpha) / (1.0 - 2.0 / alpha) *
                        std::pow(r, 2.0 - alpha) * hyp;
    return std::exp(-expo);
}

// Monotone cubic (Fritsch-Carlson) interpolant over fixed nodes.
class Pchip {
  public:
    Pchip(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y)), m_(x_.size(), 0.0) {
        const std::size_t n = x_.size();
        if (n < 2) throw std::invalid_argument("Pchip: needs >= 2 nodes");
        std::vector<double> h(n - 1), delta(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            h[i] = x_[i + 1] - x_[i];
            delta[i] = (y_[i + 1] - y_[i]) / h[i];
        }
        m_[0] = delta[0];
        m_[n - 1] = delta[n - 2];
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (delta[i - 1] * delta[i] <= 0.0) {
                m_[i] = 0.0;
            } else {
                const double w1 = 2.0 * h[i] + h[i - 1];
                const double w2 = h[i] + 2.0 * h[i - 1];
                m_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
            }
        }
    }

    double operator()(double x) const {
        const std::size_t n = x_.size();
        if (x <= x_[0]) return y_[0];
        if (x >= x_[n - 1]) return y_[n - 1];
        std::size_t i =
            static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), x) -
                                     x_.begin()) - 1;
        const double h = x_[i + 1] - x_[i];
        const double t = (x - x_[i]) / h;
        const double t2 = t * t, t3 = t2 * t;
        return y_[i] * (2 * t3 - 3 * t2 + 1) + h * m_[i] * (t3 - 2 * t2 + t) +
               y_[i + 1] * (-2 * t3 + 3 * t2) + h * m_[i + 1] * (t3 - t2);
    }

  private:
    std::vector<double> x_, y_, m_;
};

// Radial cache of nu(s, d): 64 nodes (zero plus a geometric ladder), with the
// bare fading kernel as the far tail where the ball looks like a point.
class NuTable {
  public:
    NuTable(double s, const NetworkParams& p, const QuadratureSpec& q)
        : s_(s), p_(p) {
        const double rho = std::pow(s * p.P_sc, 1.0 / p.alpha);
        d_max_ = 8.0 * std::max(p.R_c, rho);
        std::vector<double> xs, ys;
        xs.push_back(0.0);
        const int n_geo = 63;
        const double d_lo = p.R_c / 64.0;
        const double ratio = std::pow(d_max_ / d_lo, 1.0 / (n_geo - 1));
        double d = d_lo;
        for (int i = 0; i < n_geo; ++i, d *= ratio) xs.push_back(d);
        ys.reserve(xs.size());
        for (double xv : xs)
            ys.push_back(nu_integral(s_, xv, p_.R_c, p_.P_sc, p_.alpha, q));
        interp_.emplace(std::move(xs), std::move(ys));
    }

    double operator()(double d) const {
        if (d >= d_max_) return fading_kernel(d, s_ * p_.P_sc, p_.alpha);
        return (*interp_)(d);
    }

  private:
    double s_;
    const NetworkParams& p_;
    double d_max_;
    std::optional<Pchip> interp_;
};

// Plane integral of 1 - exp(-c_bar * nu(s, y)); expm1 keeps the far tail,
// where the exponent underflows toward zero, at full relative precision.
double cluster_plane_term(double s, const NetworkParams& p, const NuTable& nu,
                          const QuadratureSpec& q) {
    const double rho = std::pow(s * p.P_sc, 1.0 / p.alpha);
    return specfun::integrate_plane(
        [&](double r, double) { return -std::expm1(-p.c_bar * nu(r)); }, q,
        true, p.R_c + rho);
}

double weibull_pdf(double r, const ServingDistance& sd) {
    if (r <= 0.0) return sd.k >= 1.0 ? 0.0 : INFINITY;
    const double z = r / sd.nu;
    return (sd.k / sd.nu) * std::pow(z, sd.k - 1.0) * std::exp(-std::pow(z, sd.k));
}

// Serving-distance integral over [0, R_c], or over the whole axis when
// requested. The unbounded form sums doubling segments so the quadrature
// never sees the decayed tail as one badly sampled panel. The integrand is
// itself built from adaptive integrals, so the outer tolerance stays a few
// orders looser than the inner one or its refinement chases inner noise.
double serving_integral(const std::function<double(double)>& f,
                        const ServingDistance& sd, double R_c,
                        const AnalyticOptions& o) {
    QuadratureSpec outer = o.quad;
    outer.rel_tol = std::max(outer.rel_tol, 1.0e-7);
    outer.abs_tol = std::max(outer.abs_tol, 1.0e-10);
    if (!o.integrate_to_infinity) return integrate_1d(f, 0.0, R_c, outer);
    const double base = std::max(R_c, 2.0 * sd.nu);
    double total = integrate_1d(f, 0.0, base, outer);
    double lo = base;
    int quiet = 0;
    for (int k = 0; k < 48 && quiet < 2; ++k) {
        const double seg = integrate_1d(f, lo, 2.0 * lo, outer);
        total += seg;
        quiet = (std::fabs(seg) <=
                 outer.truncation_threshold * (std::fabs(total) + outer.abs_tol))
                    ? quiet + 1
                    : 0;
        lo *= 2.0;
    }
    return total;
}

double su_gamma(const NetworkParams& p, const AnalyticOptions& o) {
    return o.one_minus_gamma_for_su ? 1.0 - p.gamma : p.gamma;
}

}  // namespace

double laplace_mm(double s, double r, const NetworkParams& p) {
    return laplace_ppp_beyond(s, r, p.lambda_mc, p.P_mc, p.alpha);
}

double laplace_ss_cov(double s, double r_sc, const NetworkParams& p) {
    return laplace_ppp_beyond(s, r_sc, p.lambda_sc_prime, p.P_sc, p.alpha);
}

double a_factor(double s, double r, double R_c, double P, double alpha,
                const QuadratureSpec& q) {
    if (r > R_c)
        throw std::invalid_argument("a_factor: requires r <= R_c");
    return ball_overlap(s, P, alpha, r, R_c, q) / (M_PI * R_c * R_c);
}

double nu_integral(double s, double d, double R_c, double P_sc, double alpha,
                   const QuadratureSpec& q) {
    if (d < 0.0) throw std::invalid_argument("nu_integral: requires d >= 0");
    return ball_overlap(s, P_sc, alpha, d, R_c, q) / (M_PI * R_c * R_c);
}

double laplace_sm_cov(double s, double r_mc, const NetworkParams& p,
                      const QuadratureSpec& q) {
    if (s <= 0.0) return 1.0;
    const double hole = ball_overlap(s, p.P_sc, p.alpha, r_mc, p.R_c, q);
    return std::exp(-p.lambda_sc_prime *
                    (full_plane_term(s, p.P_sc, p.alpha) - hole));
}

double laplace_ms_cov(double s, double r_sc, const NetworkParams& p,
                      const QuadratureSpec& q) {
    if (s <= 0.0) return 1.0;
    const double hole = ball_overlap(s, p.P_mc, p.alpha, r_sc, p.R_c, q);
    return std::exp(-p.lambda_mc * (full_plane_term(s, p.P_mc, p.alpha) - hole));
}

double laplace_sm_cap(double s, const NetworkParams& p, const QuadratureSpec& q) {
    if (s <= 0.0) return 1.0;
    const NuTable nu(s, p, q);
    return std::exp(-p.lambda_sc_prime * cluster_plane_term(s, p, nu, q));
}

double laplace_ss_cap(double s, const NetworkParams& p, const QuadratureSpec& q) {
    if (s <= 0.0) return 1.0;
    const NuTable nu(s, p, q);
    const double other = std::exp(-p.lambda_sc_prime * cluster_plane_term(s, p, nu, q));
    const double rep =
        (2.0 / (p.R_c * p.R_c)) *
        integrate_1d([&](double t) { return std::exp(-p.c_bar * nu(t)) * t; }, 0.0,
                     p.R_c, q);
    return other * rep;
}

double laplace_ms_cap(double s, const NetworkParams& p) {
    if (s <= 0.0) return 1.0;
    return std::exp(-p.lambda_mc * full_plane_term(s, p.P_mc, p.alpha));
}

double factor_b1(Topology t, const NetworkParams& p, const AnalyticOptions& o) {
    const double T = std::expm1(p.tau_mc);
    const ServingDistance sd = serving_distance_mu(p, t);
    const auto integrand = [&](double r) {
        const double w = weibull_pdf(r, sd);
        if (w <= 0.0) return 0.0;
        const double s = T * std::pow(r, p.alpha) / p.P_mc;
        double v = laplace_mm(s, r, p);
        v *= (t == Topology::CoverageAided) ? laplace_sm_cov(s, r, p, o.quad)
                                            : laplace_sm_cap(s, p, o.quad);
        if (o.noise_like_factor) v *= std::exp(-s);
        return v * w;
    };
    return serving_integral(integrand, sd, p.R_c, o);
}

double factor_c1(Topology t, const NetworkParams& p, const AnalyticOptions& o) {
    const double T = std::expm1(p.tau_sc);
    const ServingDistance sd = serving_distance_su(p, t);
    const auto integrand = [&](double r) {
        const double w = weibull_pdf(r, sd);
        if (w <= 0.0) return 0.0;
        const double s = T * std::pow(r, p.alpha) / p.P_sc;
        double v;
        if (t == Topology::CoverageAided) {
            v = laplace_ss_cov(s, r, p) * laplace_ms_cov(s, r, p, o.quad);
        } else {
            v = laplace_ss_cap(s, p, o.quad) * laplace_ms_cap(s, p);
        }
        if (o.noise_like_factor) v *= std::exp(-s);
        return v * w;
    };
    return serving_integral(integrand, sd, p.R_c, o);
}

double factor_b2(Topology t, const NetworkParams& p, const AnalyticOptions&) {
    double x;
    if (t == Topology::CoverageAided) {
        const double l_sc = derived_intensities(p, t).lambda_sc;
        x = p.tau_mc * p.lambda_cr * (p.lambda_mc + l_sc) /
            (p.mu * p.gamma * p.lambda_mc * p.lambda_mc * p.lambda_ut);
    } else {
        x = p.tau_mc * p.lambda_cr / (p.mu * p.gamma * p.lambda_ut_m);
    }
    return clamp01(-std::expm1(-x));
}

double factor_c2(Topology t, const NetworkParams& p, const AnalyticOptions& o) {
    const double g = su_gamma(p, o);
    double x;
    if (t == Topology::CoverageAided) {
        const double l_sc = derived_intensities(p, t).lambda_sc;
        x = p.tau_sc * p.lambda_cr * (p.lambda_mc + l_sc) /
            (p.mu * g * l_sc * l_sc * p.lambda_ut);
    } else {
        const double tau = o.tau_sc_in_su_backhaul_cap ? p.tau_sc : p.tau_mc;
        x = tau * p.lambda_cr / (p.mu * g * derived_intensities(p, t).lambda_ut_s);
    }
    return clamp01(-std::expm1(-x));
}

double factor_c3(const NetworkParams& p) {
    return clamp01(-std::expm1((1.0 - p.eta) * std::log1p(p.F_sc)));
}

RateBreakdown avg_rate_mu(Topology t, const NetworkParams& p,
                             const AnalyticOptions& o) {
    RateBreakdown out;
    out.topology = t;
    out.tier = "mu";
    const double b1 = factor_b1(t, p, o);
    const double b2 = factor_b2(t, p, o);
    out.factors["B1"] = b1;
    out.factors["B2"] = b2;
    out.avg_rate = p.tau_mc * b1 * b2;
    out.gamma_degenerate = (p.gamma == 0.0);
    return out;
}

RateBreakdown avg_rate_su(Topology t, const NetworkParams& p,
                             const AnalyticOptions& o, bool with_cache) {
    RateBreakdown out;
    out.topology = t;
    out.tier = "su";
    const double c1 = factor_c1(t, p, o);
    const double c2 = factor_c2(t, p, o);
    const double c3 = with_cache ? factor_c3(p) : 0.0;
    out.factors["C1"] = c1;
    out.factors["C2"] = c2;
    out.factors["C3"] = c3;
    out.avg_rate = p.tau_sc * (c1 * c2 + c1 * c3 - c1 * c2 * c3);
    out.gamma_degenerate = (su_gamma(p, o) == 0.0);
    return out;
}

}  // namespace hetnet::analytic
