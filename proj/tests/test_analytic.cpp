#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "hetnet/analytic.hpp"
#include "hetnet/params.hpp"

using namespace hetnet;
using namespace hetnet::analytic;

namespace {

const double kThresh = std::expm1(4.0);  // linear SIR bar for tau = 4

// PPP interference beyond distance r has a closed form when alpha = 4:
// exp(-pi * lambda * sqrt(sP) * (pi/2 - atan(r^2 / sqrt(sP)))).
double ppp_beyond_closed(double s, double r, double lambda, double P) {
    const double sp = std::sqrt(s * P);
    return std::exp(-M_PI * lambda * sp * (M_PI / 2.0 - std::atan(r * r / sp)));
}

}  // namespace

TEST_CASE("every transform is 1 at s = 0 and shrinks with s") {
    NetworkParams p;
    CHECK(laplace_mm(0.0, 120.0, p) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(laplace_ss_cov(0.0, 40.0, p) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(laplace_sm_cov(0.0, 40.0, p) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(laplace_ms_cov(0.0, 40.0, p) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(laplace_sm_cap(0.0, p) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(laplace_ss_cap(0.0, p) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(laplace_ms_cap(0.0, p) == doctest::Approx(1.0).epsilon(1e-9));

    double prev = 1.0;
    for (double s = 1.0e4; s <= 1.0e12; s *= 100.0) {
        const double v = laplace_mm(s, 60.0, p);
        CHECK(v > 0.0);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("interference beyond the serving distance matches the closed form") {
    NetworkParams p;
    // the SU-tier expression keeps the candidate (unthinned) density
    for (double r : {15.0, 40.0, 90.0, 160.0}) {
        const double s_m = kThresh * std::pow(r, p.alpha) / p.P_mc;
        CHECK(laplace_mm(s_m, r, p) ==
              doctest::Approx(ppp_beyond_closed(s_m, r, p.lambda_mc, p.P_mc))
                  .epsilon(1e-9));
        const double s_s = kThresh * std::pow(r, p.alpha) / p.P_sc;
        CHECK(laplace_ss_cov(s_s, r, p) ==
              doctest::Approx(ppp_beyond_closed(s_s, r, p.lambda_sc_prime, p.P_sc))
                  .epsilon(1e-9));
    }
}

TEST_CASE("ball overlap kernel") {
    NetworkParams p;
    const double s = 1.0e6;

    // centered ball reduces to a radial integral with a closed form
    const double sp = std::sqrt(s * p.P_sc);
    const double closed =
        sp / (p.R_c * p.R_c) * std::atan(p.R_c * p.R_c / sp);
    CHECK(a_factor(s, 0.0, p.R_c, p.P_sc, p.alpha) ==
          doctest::Approx(closed).epsilon(1e-8));

    CHECK(a_factor(0.0, 30.0, p.R_c, p.P_sc, p.alpha) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(a_factor(s, p.R_c * 1.01, p.R_c, p.P_sc, p.alpha),
                    std::invalid_argument);

    SUBCASE("per-daughter coupling extends the same kernel") {
        CHECK(nu_integral(s, 0.0, p.R_c, p.P_sc, p.alpha) ==
              doctest::Approx(a_factor(s, 0.0, p.R_c, p.P_sc, p.alpha))
                  .epsilon(1e-8));
        CHECK_THROWS_AS(nu_integral(s, -1.0, p.R_c, p.P_sc, p.alpha),
                        std::invalid_argument);

        double prev = 1.0;
        for (double dd : {0.0, 40.0, 100.0, 300.0}) {
            const double v = nu_integral(s, dd, p.R_c, p.P_sc, p.alpha);
            CHECK(v > 0.0);
            CHECK(v < prev);
            prev = v;
        }
        // far from the cluster the coupling is bracketed by the kernel
        // at the near and far rims of the ball
        const double far = nu_integral(s, 300.0, p.R_c, p.P_sc, p.alpha);
        const auto kernel = [&](double t) {
            return 1.0 / (1.0 + std::pow(t, p.alpha) / (s * p.P_sc));
        };
        CHECK(far > kernel(380.0));
        CHECK(far < kernel(220.0));
    }
}

TEST_CASE("transform regression pins") {
    NetworkParams p;
    const double r = 20.0;
    const double s_m = kThresh * std::pow(r, 4.0) / p.P_mc;
    const double s_s = kThresh * std::pow(r, 4.0) / p.P_sc;

    CHECK(laplace_mm(s_m, r, p) == doctest::Approx(0.82034135333392755).epsilon(1e-8));
    CHECK(laplace_ss_cov(s_s, r, p) ==
          doctest::Approx(0.48377885738593851).epsilon(1e-8));
    CHECK(laplace_sm_cov(s_s, r, p) ==
          doctest::Approx(0.78863507387016107).epsilon(1e-7));
    CHECK(laplace_ms_cov(s_m, r, p) ==
          doctest::Approx(0.93729283413977149).epsilon(1e-7));
    CHECK(laplace_sm_cap(s_s, p) ==
          doctest::Approx(0.18056585436272374).epsilon(1e-6));
    CHECK(laplace_ss_cap(s_s, p) ==
          doctest::Approx(0.05987968725087383).epsilon(1e-6));
    CHECK(laplace_ms_cap(s_m, p) ==
          doctest::Approx(0.80511644156420303).epsilon(1e-8));

    const double r2 = 50.0;
    const double s_m2 = kThresh * std::pow(r2, 4.0) / p.P_mc;
    CHECK(laplace_mm(s_m2, r2, p) ==
          doctest::Approx(0.29004559913839401).epsilon(1e-8));
    CHECK(laplace_sm_cap(kThresh * std::pow(r2, 4.0) / p.P_sc, p) ==
          doctest::Approx(0.00010459332554823184).epsilon(1e-5));
}

TEST_CASE("backhaul factors match hand-derived exponents") {
    NetworkParams p;

    // capacity split: tau * lambda_cr / (mu * gamma * lambda_ut_m) = 4/27
    CHECK(factor_b2(Topology::CapacityAided, p) ==
          doctest::Approx(0.13769664316674127).epsilon(1e-12));
    // SU side uses the per-cluster user density c_bar / (pi R_c^2)
    CHECK(factor_c2(Topology::CapacityAided, p) ==
          doctest::Approx(0.014783117022764617).epsilon(1e-12));

    // metric-scale coverage exponents are huge: both saturate at 1
    CHECK(factor_b2(Topology::CoverageAided, p) == 1.0);
    CHECK(factor_c2(Topology::CoverageAided, p) == 1.0);

    // de-saturated coverage split (stronger backhaul): exponent
    // 4 * 1e-5 * (lambda_mc + lambda_sc) / (mu g lambda_mc^2 lambda_ut)
    NetworkParams q = p;
    q.mu = 3.0e6;
    CHECK(factor_b2(Topology::CoverageAided, q) ==
          doctest::Approx(0.04205324291196664).epsilon(1e-10));

    SUBCASE("threshold swap in the capacity SU factor") {
        NetworkParams w = p;
        w.tau_sc = 2.0;
        AnalyticOptions o;
        o.tau_sc_in_su_backhaul_cap = true;
        CHECK(factor_c2(Topology::CapacityAided, w, o) ==
              doctest::Approx(0.007419079884548968).epsilon(1e-10));
        // default keeps the MU threshold in the exponent
        CHECK(factor_c2(Topology::CapacityAided, w) ==
              doctest::Approx(0.014783117022764617).epsilon(1e-12));
    }

    SUBCASE("remaining-fraction swap in the SU factors") {
        AnalyticOptions o;
        o.one_minus_gamma_for_su = true;
        CHECK(factor_c2(Topology::CapacityAided, p, o) ==
              doctest::Approx(0.02209251978117906).epsilon(1e-10));
    }
}

TEST_CASE("cache-hit factor") {
    NetworkParams p;
    CHECK(factor_c3(p) == doctest::Approx(0.51531062667146927).epsilon(1e-12));
    CHECK(factor_c3(p) ==
          doctest::Approx(1.0 - std::pow(1.0 + p.F_sc, 1.0 - p.eta))
              .epsilon(1e-12));

    NetworkParams q = p;
    q.F_sc = 0.0;
    CHECK(factor_c3(q) == 0.0);

    double prev = -1.0;
    for (double f : {0.0, 1.0, 4.0, 16.0, 64.0, 256.0}) {
        q.F_sc = f;
        const double v = factor_c3(q);
        CHECK(v > prev);
        CHECK(v < 1.0);
        prev = v;
    }
}

TEST_CASE("serving-distance factors, figure-style options") {
    NetworkParams p;
    AnalyticOptions o;
    o.noise_like_factor = false;

    CHECK(factor_b1(Topology::CoverageAided, p, o) ==
          doctest::Approx(0.049457023757733545).epsilon(1e-6));
    CHECK(factor_c1(Topology::CoverageAided, p, o) ==
          doctest::Approx(0.047328320740226179).epsilon(1e-6));
    CHECK(factor_b1(Topology::CapacityAided, p, o) ==
          doctest::Approx(0.01893519075394981).epsilon(1e-5));
    CHECK(factor_c1(Topology::CapacityAided, p, o) ==
          doctest::Approx(0.051940214592079717).epsilon(1e-5));

    // the kept noise-like factor can only shrink the integrals
    AnalyticOptions keep;
    keep.noise_like_factor = true;
    CHECK(factor_b1(Topology::CoverageAided, p, keep) <
          factor_b1(Topology::CoverageAided, p, o));
}

TEST_CASE("rate assembly identities") {
    NetworkParams p;
    AnalyticOptions o;
    o.noise_like_factor = false;

    for (Topology t : {Topology::CoverageAided, Topology::CapacityAided}) {
        CAPTURE(to_string(t));
        const auto mu = avg_rate_mu(t, p, o);
        CHECK(mu.tier == "mu");
        CHECK(mu.topology == t);
        CHECK(mu.avg_rate ==
              doctest::Approx(p.tau_mc * mu.factors.at("B1") * mu.factors.at("B2"))
                  .epsilon(1e-12));
        CHECK(mu.factors.at("B2") ==
              doctest::Approx(factor_b2(t, p, o)).epsilon(1e-12));
        CHECK_FALSE(mu.gamma_degenerate);

        const auto su = avg_rate_su(t, p, o);
        const double c1 = su.factors.at("C1");
        const double c2 = su.factors.at("C2");
        const double c3 = su.factors.at("C3");
        CHECK(su.avg_rate ==
              doctest::Approx(p.tau_sc * (c1 * c2 + c1 * c3 - c1 * c2 * c3))
                  .epsilon(1e-12));
        CHECK(c3 == doctest::Approx(factor_c3(p)).epsilon(1e-12));

        const auto bare = avg_rate_su(t, p, o, false);
        CHECK(bare.factors.at("C3") == 0.0);
        CHECK(bare.avg_rate ==
              doctest::Approx(p.tau_sc * bare.factors.at("C1") *
                              bare.factors.at("C2"))
                  .epsilon(1e-12));
        // dropping the cache never helps
        CHECK(bare.avg_rate <= su.avg_rate);
    }
}

TEST_CASE("rate regression pins at defaults") {
    NetworkParams p;
    AnalyticOptions o;
    o.noise_like_factor = false;
    CHECK(avg_rate_mu(Topology::CoverageAided, p, o).avg_rate ==
          doctest::Approx(0.19782809503093418).epsilon(1e-6));
    CHECK(avg_rate_su(Topology::CoverageAided, p, o).avg_rate ==
          doctest::Approx(0.18931328296090472).epsilon(1e-6));
    CHECK(avg_rate_mu(Topology::CapacityAided, p, o).avg_rate ==
          doctest::Approx(0.010429248818163225).epsilon(1e-5));
    CHECK(avg_rate_su(Topology::CapacityAided, p, o).avg_rate ==
          doctest::Approx(0.10855003032417029).epsilon(1e-5));
    CHECK(avg_rate_su(Topology::CapacityAided, p, o, false).avg_rate ==
          doctest::Approx(0.0030713530820088834).epsilon(1e-5));

    // saturated coverage backhaul makes the cache invisible in the total
    CHECK(avg_rate_su(Topology::CoverageAided, p, o).avg_rate ==
          doctest::Approx(avg_rate_su(Topology::CoverageAided, p, o, false).avg_rate)
              .epsilon(1e-9));
}

TEST_CASE("degenerate split flags") {
    // the printed exponents put gamma in both tiers' denominators
    NetworkParams p;
    p.gamma = 0.0;
    CHECK(avg_rate_mu(Topology::CapacityAided, p).gamma_degenerate);
    CHECK(avg_rate_su(Topology::CapacityAided, p).gamma_degenerate);

    AnalyticOptions o;
    o.one_minus_gamma_for_su = true;
    CHECK_FALSE(avg_rate_su(Topology::CapacityAided, p, o).gamma_degenerate);
    NetworkParams q;
    q.gamma = 1.0;
    CHECK(avg_rate_su(Topology::CapacityAided, q, o).gamma_degenerate);
    CHECK_FALSE(avg_rate_mu(Topology::CapacityAided, q, o).gamma_degenerate);
}
