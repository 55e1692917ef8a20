#include "hetnet/params.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hetnet {

const char* to_string(Topology t) {
    return t == Topology::CoverageAided ? "cov" : "cap";
}

std::vector<std::string> validation_errors(const NetworkParams& p, Topology t) {
    std::vector<std::string> errs;
    const auto positive = [&](double v, const char* name) {
        if (!(v > 0.0)) errs.push_back(std::string(name) + " must be > 0");
    };
    positive(p.lambda_cr, "lambda_cr");
    positive(p.lambda_mc, "lambda_mc");
    positive(p.lambda_sc_prime, "lambda_sc_prime");
    positive(p.R_c, "R_c");
    positive(p.P_mc, "P_mc");
    positive(p.P_sc, "P_sc");
    positive(p.tau_mc, "tau_mc");
    positive(p.tau_sc, "tau_sc");
    positive(p.mu, "mu");
    positive(p.chunk_size_bytes, "chunk_size_bytes");
    if (t == Topology::CoverageAided) {
        positive(p.lambda_ut, "lambda_ut");
        if (!(p.lambda_sc_prime > p.lambda_mc))
            errs.push_back("lambda_sc_prime must exceed lambda_mc (coverage-aided)");
    } else {
        positive(p.lambda_ut_m, "lambda_ut_m");
        positive(p.c_bar, "c_bar");
    }
    if (!(p.alpha > 2.0)) errs.push_back("alpha must be > 2");
    if (!(p.eta > 1.0)) errs.push_back("eta must be > 1");
    if (!(p.gamma >= 0.0 && p.gamma <= 1.0))
        errs.push_back("gamma must lie in [0,1]");
    if (!(p.F_sc >= 0.0)) errs.push_back("F_sc must be >= 0");
    if (!(p.F > p.F_sc)) errs.push_back("F must exceed F_sc");
    if (p.dist_k && !(*p.dist_k > 0.0)) errs.push_back("dist_k must be > 0");
    if (p.dist_nu && !(*p.dist_nu > 0.0)) errs.push_back("dist_nu must be > 0");
    return errs;
}

void validate(const NetworkParams& p, Topology t) {
    const auto errs = validation_errors(p, t);
    if (errs.empty()) return;
    std::ostringstream msg;
    msg << "invalid parameters:";
    for (const auto& e : errs) msg << "\n  " << e;
    throw std::invalid_argument(msg.str());
}

DerivedIntensities derived_intensities(const NetworkParams& p, Topology t) {
    DerivedIntensities d;
    if (t == Topology::CoverageAided) {
        d.lambda_sc =
            p.lambda_sc_prime * std::exp(-p.lambda_mc * M_PI * p.R_c * p.R_c);
        d.lambda_ut_s = 0.0;
        d.lambda_ut_total = p.lambda_ut;
    } else {
        d.lambda_sc = p.lambda_sc_prime * p.c_bar;
        d.lambda_ut_s = p.c_bar / (M_PI * p.R_c * p.R_c);
        d.lambda_ut_total = p.lambda_mc + d.lambda_sc;
    }
    return d;
}

namespace {

ServingDistance serving_with_default(const NetworkParams& p, double lambda_serving) {
    ServingDistance s;
    s.k = p.dist_k.value_or(2.0);
    s.nu = p.dist_nu.value_or(1.0 / std::sqrt(M_PI * lambda_serving));
    return s;
}

}  // namespace

ServingDistance serving_distance_mu(const NetworkParams& p, Topology) {
    return serving_with_default(p, p.lambda_mc);
}

ServingDistance serving_distance_su(const NetworkParams& p, Topology t) {
    return serving_with_default(p, derived_intensities(p, t).lambda_sc);
}

}  // namespace hetnet
