#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hetnet/geometry.hpp"
#include "hetnet/params.hpp"
#include "hetnet/pointprocess.hpp"
#include "hetnet/rng.hpp"

namespace hetnet {

enum class Tier { MacroUser, SmallUser };

struct SimOptions {
  std::uint64_t n_realizations = 10000;
  std::uint64_t seed = 1;
  // <= 0 means: HETNET_THREADS env var if set, else hardware concurrency.
  int threads = 0;
  // <= 0 means the minimal legal half-extent for the parameter set.
  double window_half_extent = 0.0;
  bool toroidal = true;
  // Backhaul split uses the serving router's own descendant counts instead of
  // the ensemble load averages. Sensitivity knob, off by default.
  bool per_realization_backhaul = false;
  // Drop the small-cell tier entirely (macro-only network, no SU sampling).
  bool disable_sbs_tier = false;
  // Abort if more than this fraction of realization draws get rejected.
  double max_reject_fraction = 0.01;
};

int resolve_thread_count(int requested);

// One sampled network realization. Point sets follow a fixed draw order so a
// given (seed, realization) pair reproduces bit-for-bit.
struct Scenario {
  Topology topology = Topology::CoverageAided;
  Window window;
  PointSet routers;       // Role::CoreRouter
  PointSet mbs;           // Role::MBS
  PointSet sbs;           // Role::SBS (empty when the tier is disabled)
  PointSet cluster_parents;  // capacity-aided only, parent centers of sbs
  PointSet mus;           // Role::MU
  PointSet sus;           // Role::SU (parent_index -> sbs cluster parent)
  std::vector<double> router_capacity;  // Exp(mu) draw per router

  // Typical users. The macro user sits at the origin; the small user is
  // placed by the topology's conditioning rule.
  Point typical_mu{0.0, 0.0};
  Point typical_su{0.0, 0.0};
  std::int32_t mu_serving = -1;  // index into mbs
  std::int32_t su_serving = -1;  // index into sbs
  double mu_serving_dist = 0.0;
  double su_serving_dist = 0.0;
  bool has_su = false;

  RandomStream stream;  // positioned after all placement draws
};

// Draws one realization. Returns false (and leaves the scenario partially
// filled) when a required point set came up empty or the typical small user
// could not be placed; callers redraw on a fresh substream.
bool generate_scenario(const NetworkParams& p, Topology t, const SimOptions& opts,
                       const Window& w, RandomStream stream, Scenario& out);

// Hierarchy association: every BS to its nearest router, every user to its
// nearest BS of the serving tier. Built once per realization with grid
// acceleration; all lookups tie-break toward the lowest point index.
struct HierTree {
  std::vector<std::int32_t> mbs_router;  // mbs index -> router index
  std::vector<std::int32_t> sbs_router;
  std::vector<std::int32_t> mu_bs;  // user index -> serving BS index
  std::vector<std::int32_t> su_bs;
  std::vector<std::int64_t> mu_per_router;  // MU descendants via attached MBSs
  std::vector<std::int64_t> su_per_router;  // SU descendants via attached SBSs
  std::int64_t n_mu = 0;
  std::int64_t n_su = 0;
  std::int64_t n_routers = 0;
};

HierTree build_tree(const Scenario& s);

struct SirSample {
  double sir = 0.0;
  double serving_distance = 0.0;
  bool valid = false;  // false when no interferer exists in the window
};

// Rayleigh-faded SIR of the typical user of the given tier, fresh fading on
// every call. Serving link is the nearest BS of the user's own tier; all
// other BSs of both tiers interfere.
SirSample sir_sample(Scenario& s, const NetworkParams& p, Tier tier);

// Continuous popularity draw: file index f >= 1 with P(f > x) = x^{1-eta}.
double sample_request(RandomStream& stream, double eta);

// Whether a request for file f is served from a cache of size f_sc.
bool cache_hit(double f, double f_sc);

struct DeliveryInputs {
  bool sir_pass = false;
  bool backhaul_ok = false;
  bool cache_ok = false;  // ignored for the macro tier / no-cache variant
};

// Rate credited to one request: tau when the SIR threshold is met and the
// content is reachable (backhaul or cache), else zero.
double delivery_sample(const DeliveryInputs& in, double tau, bool cache_enabled);

struct RateEstimate {
  double mean = 0.0;
  double ci_half_width = 0.0;  // 95% normal interval
  std::uint64_t n = 0;
};

struct BackhaulRates {
  double mu_rate = 0.0;       // provisioned rate on the macro chain
  double su_rate = 0.0;       // provisioned rate on the small-cell chain
  double mean_mu_load = 0.0;  // E[N_mc * N_mu] estimate (MU descendants per router)
  double mean_su_load = 0.0;  // E[N_sc * N_su] estimate
};

struct SimResult {
  RateEstimate mu;
  RateEstimate su;
  RateEstimate su_no_cache;
  BackhaulRates backhaul;
  double mu_sir_prob = 0.0;  // P(SIR_mu threshold met)
  double su_sir_prob = 0.0;
  double mu_sir_within_prob = 0.0;  // ... and serving distance <= R_c
  double su_sir_within_prob = 0.0;
  std::uint64_t rejected_draws = 0;
};

// Full two-pass estimator: pass one samples realizations (parallel, order
// independent), pass two reduces loads into backhaul rates and scores
// delivery. The cached and non-cached SU variants share SIR and capacity
// draws, so "cache can only help" holds exactly per sample.
SimResult estimate_avg_rates(const NetworkParams& p, Topology t, const SimOptions& opts);

// P(SIR of the typical macro user > threshold), linear threshold. With
// opts.disable_sbs_tier this is the classic single-tier probability
// 1 / (1 + rho(threshold, alpha)) used as a closed-form oracle.
RateEstimate estimate_sir_exceed(const NetworkParams& p, Topology t, double threshold,
                                 const SimOptions& opts);

// Interference Laplace-transform kinds with the exact conditioning the
// analytic counterparts assume. "cond" is the serving distance r where one
// applies (ignored for the cluster kinds that need none).
enum class TransformKind {
  MacroBeyondServing,      // macro PPP outside radius r, macro power
  SmallBeyondServing,      // small PPP (unthinned intensity) outside r
  SmallMinusHole,          // small PPP minus one ball of radius R_c at distance r
  MacroMinusHole,          // macro PPP minus one ball of radius R_c at distance r
  ClusterField,            // full cluster-process field, small power
  ClusterFieldPalm,        // cluster field plus the typical user's own cluster
  MacroFullPlane           // macro PPP, no exclusion
};

RateEstimate mc_laplace(TransformKind kind, double s, double cond, const NetworkParams& p,
                        std::uint64_t n, std::uint64_t seed, double half_extent);

}  // namespace hetnet
