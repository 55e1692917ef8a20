#pragma once

#include <map>
#include <string>

#include "hetnet/params.hpp"
#include "hetnet/specfun.hpp"

namespace hetnet::analytic {

using specfun::QuadratureSpec;

// Knobs for the closed-form rate expressions. Defaults follow the printed
// expressions; the alternates exist for sensitivity runs.
struct AnalyticOptions {
    // Keep the leading exp(-(e^tau - 1) r^alpha / P) factor of the
    // conditional-rate integrands. It is printed, but at metric parameter
    // scales it collapses the integrals to ~0, so figure-style runs drop it.
    bool noise_like_factor = true;
    // Integrate the serving-distance integrals to infinity instead of R_c.
    bool integrate_to_infinity = false;
    // Use tau_sc instead of the printed tau_mc in the capacity-aided
    // SU backhaul factor.
    bool tau_sc_in_su_backhaul_cap = false;
    // Use (1 - gamma) instead of the printed gamma in the SU backhaul factors.
    bool one_minus_gamma_for_su = false;
    QuadratureSpec quad;
};

// Interference Laplace transforms, evaluated at transform argument s.
// All return 1.0 at s = 0 and values in (0, 1].

// PPP interferers of the given tier beyond serving distance r.
double laplace_mm(double s, double r, const NetworkParams& p);
double laplace_ss_cov(double s, double r_sc, const NetworkParams& p);

// Normalized ball overlap: average of 1/(1 + t^alpha/(sP)) over a ball of
// radius R_c whose center sits at distance r from the evaluation point
// (t = distance to the evaluation point). Requires r <= R_c.
double a_factor(double s, double r, double R_c, double P, double alpha,
                const QuadratureSpec& q = {});

// Whole-plane PPP interference corrected by the one exclusion ball the
// deployment guarantees around the serving station.
double laplace_sm_cov(double s, double r_mc, const NetworkParams& p,
                      const QuadratureSpec& q = {});
double laplace_ms_cov(double s, double r_sc, const NetworkParams& p,
                      const QuadratureSpec& q = {});

// Mean per-daughter interference coupling at distance d from a cluster
// center; same ball kernel as a_factor but defined for every d >= 0.
double nu_integral(double s, double d, double R_c, double P_sc, double alpha,
                   const QuadratureSpec& q = {});

// Cluster-process interference transforms (capacity-aided).
double laplace_sm_cap(double s, const NetworkParams& p,
                      const QuadratureSpec& q = {});
double laplace_ss_cap(double s, const NetworkParams& p,
                      const QuadratureSpec& q = {});
double laplace_ms_cap(double s, const NetworkParams& p);

// Average-delivery-rate factors.
double factor_b1(Topology t, const NetworkParams& p, const AnalyticOptions& o = {});
double factor_b2(Topology t, const NetworkParams& p, const AnalyticOptions& o = {});
double factor_c1(Topology t, const NetworkParams& p, const AnalyticOptions& o = {});
double factor_c2(Topology t, const NetworkParams& p, const AnalyticOptions& o = {});
double factor_c3(const NetworkParams& p);

struct RateBreakdown {
    Topology topology = Topology::CoverageAided;
    std::string tier;  // "mu" or "su"
    double avg_rate = 0.0;
    std::map<std::string, double> factors;
    bool gamma_degenerate = false;  // gamma hit 0 (or 1 with the SU swap)
};

RateBreakdown avg_rate_mu(Topology t, const NetworkParams& p,
                             const AnalyticOptions& o = {});
// with_cache false zeroes the cache-hit factor (C3 = 0).
RateBreakdown avg_rate_su(Topology t, const NetworkParams& p,
                             const AnalyticOptions& o = {}, bool with_cache = true);

}  // namespace hetnet::analytic
