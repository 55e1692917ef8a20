#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hetnet {

enum class Topology { CoverageAided, CapacityAided };

const char* to_string(Topology t);

// Deployment, channel, backhaul and content parameters.
// Distances are meters, densities points per m^2, powers watts,
// rate thresholds nats/s/Hz, content sizes in cache chunks.
struct NetworkParams {
    double lambda_cr = 1.0e-5;        // core router density
    double lambda_mc = 1.5e-5;        // MBS density
    double lambda_sc_prime = 5.5e-5;  // SBS candidate / cluster-parent density
    double lambda_ut = 12.8e-5;       // user density (coverage-aided)
    double lambda_ut_m = 1.5e-5;      // MU density (capacity-aided); defaults to lambda_mc
    double c_bar = 3.0;               // mean SBSs (and SUs) per cluster
    double R_c = 80.0;                // exclusion / cluster radius
    double P_mc = 16.0;               // MBS transmit power
    double P_sc = 3.0;                // SBS transmit power
    double alpha = 4.0;               // path-loss exponent, > 2
    double tau_mc = 4.0;              // MU rate threshold
    double tau_sc = 4.0;              // SU rate threshold
    double mu = 30.0;                 // mean core-router backhaul capacity
    double gamma = 0.6;               // backhaul split toward MBS tier, in [0,1]
    double eta = 1.45;                // popularity exponent, > 1
    double F_sc = 4.0;                // SBS cache size, chunks
    double F = 500.0;                 // catalog size, chunks
    double chunk_size_bytes = 1.0e9;  // used only to convert *_bytes config keys

    // Serving-distance law overrides; unset means k=2 and
    // nu = (pi * lambda_serving)^{-1/2}, the PPP nearest-neighbor law.
    std::optional<double> dist_k;
    std::optional<double> dist_nu;
};

// Intensities implied by the deployment definitions.
struct DerivedIntensities {
    double lambda_sc = 0.0;        // retained SBS density
    double lambda_ut_s = 0.0;      // per-cluster SU density (capacity-aided)
    double lambda_ut_total = 0.0;  // total user density
};

// Returns one message per violated constraint; empty means valid.
std::vector<std::string> validation_errors(const NetworkParams& p, Topology t);

// Throws std::invalid_argument listing every violated constraint by name.
void validate(const NetworkParams& p, Topology t);

DerivedIntensities derived_intensities(const NetworkParams& p, Topology t);

// Serving-distance Weibull parameters (shape k, scale nu) for one tier.
struct ServingDistance {
    double k = 2.0;
    double nu = 0.0;
};

ServingDistance serving_distance_mu(const NetworkParams& p, Topology t);
ServingDistance serving_distance_su(const NetworkParams& p, Topology t);

}  // namespace hetnet
