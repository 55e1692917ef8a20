#include "hetnet/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>

namespace hetnet {

namespace {

constexpr int kMaxAttempts = 64;
constexpr int kSuPlacementTries = 1024;

double pow_d2_neg_half_alpha(double d2, double alpha) {
    if (alpha == 4.0) return 1.0 / (d2 * d2);
    return std::pow(d2, -0.5 * alpha);
}

template <class Fn>
void parallel_for(std::uint64_t n, int threads, Fn&& fn) {
    const std::uint64_t t =
        std::min<std::uint64_t>(std::max(threads, 1), std::max<std::uint64_t>(n, 1));
    if (t <= 1) {
        for (std::uint64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::mutex err_mutex;
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (std::uint64_t k = 0; k < t; ++k) {
        const std::uint64_t lo = n * k / t;
        const std::uint64_t hi = n * (k + 1) / t;
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::uint64_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> g(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

double sparsest_density(const NetworkParams& p, Topology t, bool with_users) {
    const DerivedIntensities d = derived_intensities(p, t);
    double m = std::min(p.lambda_mc, d.lambda_sc);
    m = std::min(m, p.lambda_sc_prime);
    if (with_users) {
        m = std::min(m, p.lambda_cr);
        if (t == Topology::CoverageAided) {
            m = std::min(m, p.lambda_ut);
        } else {
            m = std::min(m, std::min(p.lambda_ut_m, d.lambda_ut_s));
        }
    }
    return m;
}

Window resolve_window(const NetworkParams& p, Topology t, const SimOptions& opts,
                      bool with_users) {
    return Window::for_simulation(opts.window_half_extent, opts.toroidal, p.R_c,
                                  sparsest_density(p, t, with_users));
}

struct RealizationRecord {
    bool done = false;
    bool mu_sir = false, su_sir = false;
    bool mu_within = false, su_within = false;
    double cap_mu = 0.0, cap_su = 0.0;
    double request = 0.0;
    std::int64_t load_mu = 0, load_su = 0;
    std::int64_t n_mu = 0, n_su = 0, n_cr = 0;
    std::uint32_t rejects = 0;
};

RateEstimate binomial_estimate(std::uint64_t hits, std::uint64_t n, double value) {
    RateEstimate e;
    e.n = n;
    if (n == 0) return e;
    const double prob = static_cast<double>(hits) / static_cast<double>(n);
    e.mean = value * prob;
    e.ci_half_width =
        1.96 * value * std::sqrt(prob * (1.0 - prob) / static_cast<double>(n));
    return e;
}

}  // namespace

int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("HETNET_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

bool generate_scenario(const NetworkParams& p, Topology t, const SimOptions& opts,
                       const Window& w, RandomStream rs, Scenario& out) {
    out = Scenario{};
    out.topology = t;
    out.window = w;
    const bool want_sbs = !opts.disable_sbs_tier;

    out.mbs = sample_ppp(p.lambda_mc, w, Role::MBS, rs);
    if (want_sbs) {
        if (t == Topology::CoverageAided) {
            out.sbs = sample_php(p.lambda_sc_prime, out.mbs, p.R_c, w, Role::SBS, rs);
        } else {
            ClusterProcess cp = sample_mcp(p.lambda_sc_prime, p.c_bar, p.R_c, w,
                                           Role::SBS, rs);
            out.cluster_parents = std::move(cp.parents);
            out.sbs = std::move(cp.daughters);
        }
    }
    out.routers = sample_ppp(p.lambda_cr, w, Role::CoreRouter, rs);

    std::optional<NeighborGrid> grid_mbs, grid_sbs;
    if (t == Topology::CoverageAided) {
        PointSet users = sample_ppp(p.lambda_ut, w, Role::MU, rs);
        out.mus.role = Role::MU;
        out.sus.role = Role::SU;
        if (want_sbs && !out.sbs.empty() && !out.mbs.empty()) {
            grid_mbs.emplace(out.mbs, w);
            grid_sbs.emplace(out.sbs, w);
            for (const Point q : users.pts) {
                const NearestHit hm = grid_mbs->nearest(q);
                const NearestHit hs = grid_sbs->nearest(q);
                if (hs.distance < hm.distance) {
                    out.sus.pts.push_back(q);
                } else {
                    out.mus.pts.push_back(q);
                }
            }
        } else {
            out.mus = std::move(users);
        }
    } else {
        out.mus = sample_ppp(p.lambda_ut_m, w, Role::MU, rs);
        if (want_sbs) {
            out.sus = sample_daughters(out.cluster_parents, p.c_bar, p.R_c, w,
                                       Role::SU, rs);
        }
    }

    out.router_capacity.resize(out.routers.size());
    for (double& c : out.router_capacity) c = rs.exponential(p.mu);

    bool viable = !out.mbs.empty() && !out.routers.empty();
    if (want_sbs) viable = viable && !out.sbs.empty();
    if (want_sbs && t == Topology::CapacityAided)
        viable = viable && !out.cluster_parents.empty();
    if (!viable) {
        out.stream = rs;
        return false;
    }

    out.typical_mu = {0.0, 0.0};
    const NearestHit hm = nearest(out.typical_mu, out.mbs, w);
    out.mu_serving = static_cast<std::int32_t>(hm.index);
    out.mu_serving_dist = hm.distance;

    if (want_sbs) {
        if (t == Topology::CoverageAided) {
            if (!grid_mbs) grid_mbs.emplace(out.mbs, w);
            if (!grid_sbs) grid_sbs.emplace(out.sbs, w);
            bool placed = false;
            for (int k = 0; k < kSuPlacementTries && !placed; ++k) {
                const Point q = w.wrap({rs.uniform(-w.half_extent, w.half_extent),
                                        rs.uniform(-w.half_extent, w.half_extent)});
                const NearestHit qm = grid_mbs->nearest(q);
                if (qm.distance < p.R_c) continue;
                const NearestHit qs = grid_sbs->nearest(q);
                if (qs.distance < qm.distance) {
                    out.typical_su = q;
                    out.su_serving = static_cast<std::int32_t>(qs.index);
                    out.su_serving_dist = qs.distance;
                    placed = true;
                }
            }
            if (!placed) {
                out.stream = rs;
                return false;
            }
        } else {
            const std::uint64_t idx = rs.uniform_index(out.cluster_parents.size());
            const Point par = out.cluster_parents.pts[idx];
            const double rad = p.R_c * std::sqrt(rs.uniform());
            const double ang = rs.uniform(0.0, 2.0 * M_PI);
            out.typical_su =
                w.wrap({par.x + rad * std::cos(ang), par.y + rad * std::sin(ang)});
            const NearestHit qs = nearest(out.typical_su, out.sbs, w);
            out.su_serving = static_cast<std::int32_t>(qs.index);
            out.su_serving_dist = qs.distance;
        }
        out.has_su = true;
    }

    out.stream = rs;
    return true;
}

HierTree build_tree(const Scenario& s) {
    if (s.routers.empty() || s.mbs.empty())
        throw std::logic_error("build_tree: requires a viable scenario");
    HierTree t;
    const Window& w = s.window;
    t.n_routers = static_cast<std::int64_t>(s.routers.size());
    t.n_mu = static_cast<std::int64_t>(s.mus.size());
    t.n_su = static_cast<std::int64_t>(s.sus.size());

    const NeighborGrid grid_router(s.routers, w);
    t.mbs_router.resize(s.mbs.size());
    for (std::size_t i = 0; i < s.mbs.size(); ++i)
        t.mbs_router[i] =
            static_cast<std::int32_t>(grid_router.nearest(s.mbs.pts[i]).index);
    t.sbs_router.resize(s.sbs.size());
    for (std::size_t i = 0; i < s.sbs.size(); ++i)
        t.sbs_router[i] =
            static_cast<std::int32_t>(grid_router.nearest(s.sbs.pts[i]).index);

    const NeighborGrid grid_mbs(s.mbs, w);
    t.mu_bs.resize(s.mus.size());
    for (std::size_t i = 0; i < s.mus.size(); ++i)
        t.mu_bs[i] = static_cast<std::int32_t>(grid_mbs.nearest(s.mus.pts[i]).index);
    if (!s.sbs.empty()) {
        const NeighborGrid grid_sbs(s.sbs, w);
        t.su_bs.resize(s.sus.size());
        for (std::size_t i = 0; i < s.sus.size(); ++i)
            t.su_bs[i] =
                static_cast<std::int32_t>(grid_sbs.nearest(s.sus.pts[i]).index);
    }

    t.mu_per_router.assign(s.routers.size(), 0);
    t.su_per_router.assign(s.routers.size(), 0);
    for (const std::int32_t bs : t.mu_bs) ++t.mu_per_router[t.mbs_router[bs]];
    for (const std::int32_t bs : t.su_bs) ++t.su_per_router[t.sbs_router[bs]];
    return t;
}

SirSample sir_sample(Scenario& s, const NetworkParams& p, Tier tier) {
    const bool macro = tier == Tier::MacroUser;
    SirSample out;
    if (!macro && !s.has_su) return out;
    const Point user = macro ? s.typical_mu : s.typical_su;
    const PointSet& own = macro ? s.mbs : s.sbs;
    const PointSet& cross = macro ? s.sbs : s.mbs;
    const double p_own = macro ? p.P_mc : p.P_sc;
    const double p_cross = macro ? p.P_sc : p.P_mc;
    const std::int32_t serving = macro ? s.mu_serving : s.su_serving;
    out.serving_distance = macro ? s.mu_serving_dist : s.su_serving_dist;

    double signal = 0.0;
    double interference = 0.0;
    for (std::size_t i = 0; i < own.pts.size(); ++i) {
        const double h = s.stream.exponential(1.0);
        const double d2 = s.window.dist2(user, own.pts[i]);
        const double pw = p_own * h * pow_d2_neg_half_alpha(d2, p.alpha);
        if (static_cast<std::int32_t>(i) == serving) {
            signal = pw;
        } else {
            interference += pw;
        }
    }
    for (const Point b : cross.pts) {
        const double h = s.stream.exponential(1.0);
        const double d2 = s.window.dist2(user, b);
        interference += p_cross * h * pow_d2_neg_half_alpha(d2, p.alpha);
    }
    out.valid = interference > 0.0;
    out.sir = out.valid ? signal / interference
                        : std::numeric_limits<double>::infinity();
    return out;
}

double sample_request(RandomStream& stream, double eta) {
    return std::pow(1.0 - stream.uniform(), -1.0 / (eta - 1.0));
}

bool cache_hit(double f, double f_sc) { return f <= 1.0 + f_sc; }

double delivery_sample(const DeliveryInputs& in, double tau, bool cache_enabled) {
    if (!in.sir_pass) return 0.0;
    if (in.backhaul_ok) return tau;
    if (cache_enabled && in.cache_ok) return tau;
    return 0.0;
}

SimResult estimate_avg_rates(const NetworkParams& p, Topology t,
                             const SimOptions& opts) {
    const std::vector<std::string> errors = validation_errors(p, t);
    if (!errors.empty())
        throw std::invalid_argument("estimate_avg_rates: " + errors.front());
    const Window w = resolve_window(p, t, opts, true);
    const int threads = resolve_thread_count(opts.threads);
    const std::uint64_t n = opts.n_realizations;
    if (n == 0) throw std::invalid_argument("estimate_avg_rates: n_realizations == 0");

    const double thr_mu = std::expm1(p.tau_mc);
    const double thr_su = std::expm1(p.tau_sc);
    std::vector<RealizationRecord> recs(n);

    parallel_for(n, threads, [&](std::uint64_t r) {
        RealizationRecord& rec = recs[r];
        for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
            RandomStream rs(opts.seed, r * kMaxAttempts + attempt);
            Scenario sc;
            if (!generate_scenario(p, t, opts, w, rs, sc)) {
                ++rec.rejects;
                continue;
            }
            const HierTree tree = build_tree(sc);
            const SirSample ms = sir_sample(sc, p, Tier::MacroUser);
            SirSample ss;
            if (sc.has_su) ss = sir_sample(sc, p, Tier::SmallUser);
            if (!ms.valid || (sc.has_su && !ss.valid)) {
                ++rec.rejects;
                continue;
            }
            rec.mu_sir = ms.sir > thr_mu;
            rec.mu_within = rec.mu_sir && ms.serving_distance <= p.R_c;
            const std::int32_t router_mu = tree.mbs_router[sc.mu_serving];
            rec.cap_mu = sc.router_capacity[router_mu];
            rec.load_mu = tree.mu_per_router[router_mu];
            if (sc.has_su) {
                rec.su_sir = ss.sir > thr_su;
                rec.su_within = rec.su_sir && ss.serving_distance <= p.R_c;
                const std::int32_t router_su = tree.sbs_router[sc.su_serving];
                rec.cap_su = sc.router_capacity[router_su];
                rec.load_su = tree.su_per_router[router_su];
            }
            rec.request = sample_request(sc.stream, p.eta);
            rec.n_mu = tree.n_mu;
            rec.n_su = tree.n_su;
            rec.n_cr = tree.n_routers;
            rec.done = true;
            break;
        }
        if (!rec.done)
            throw std::runtime_error(
                "estimate_avg_rates: realization rejected too many times");
    });

    std::uint64_t rejects = 0;
    std::int64_t sum_mu = 0, sum_su = 0, sum_cr = 0;
    for (const RealizationRecord& rec : recs) {
        rejects += rec.rejects;
        sum_mu += rec.n_mu;
        sum_su += rec.n_su;
        sum_cr += rec.n_cr;
    }
    const double total_draws = static_cast<double>(n + rejects);
    if (static_cast<double>(rejects) > opts.max_reject_fraction * total_draws)
        throw std::runtime_error("estimate_avg_rates: rejected draw fraction " +
                                 std::to_string(rejects / total_draws) +
                                 " exceeds the configured limit");

    const double load_mu =
        sum_cr > 0 ? static_cast<double>(sum_mu) / static_cast<double>(sum_cr) : 0.0;
    const double load_su =
        sum_cr > 0 ? static_cast<double>(sum_su) / static_cast<double>(sum_cr) : 0.0;

    const bool with_su = !opts.disable_sbs_tier;
    std::uint64_t hits_mu = 0, hits_su = 0, hits_sunc = 0;
    std::uint64_t sir_mu = 0, sir_su = 0, sir_mu_within = 0, sir_su_within = 0;
    for (const RealizationRecord& rec : recs) {
        sir_mu += rec.mu_sir;
        sir_su += rec.su_sir;
        sir_mu_within += rec.mu_within;
        sir_su_within += rec.su_within;

        const double denom_mu = opts.per_realization_backhaul
                                    ? static_cast<double>(std::max<std::int64_t>(
                                          rec.load_mu, 1))
                                    : load_mu;
        const double rate_mu = p.gamma * rec.cap_mu / denom_mu;
        const DeliveryInputs in_mu{rec.mu_sir, rate_mu > p.tau_mc, false};
        if (delivery_sample(in_mu, p.tau_mc, false) > 0.0) ++hits_mu;

        if (with_su) {
            const double denom_su = opts.per_realization_backhaul
                                        ? static_cast<double>(std::max<std::int64_t>(
                                              rec.load_su, 1))
                                        : load_su;
            const double rate_su = (1.0 - p.gamma) * rec.cap_su / denom_su;
            const bool bh_su = rate_su > p.tau_sc;
            const bool hit = cache_hit(rec.request, p.F_sc);
            const DeliveryInputs in_su{rec.su_sir, bh_su, hit};
            if (delivery_sample(in_su, p.tau_sc, true) > 0.0) ++hits_su;
            if (delivery_sample(in_su, p.tau_sc, false) > 0.0) ++hits_sunc;
        }
    }

    SimResult out;
    out.mu = binomial_estimate(hits_mu, n, p.tau_mc);
    out.su = binomial_estimate(hits_su, with_su ? n : 0, p.tau_sc);
    out.su_no_cache = binomial_estimate(hits_sunc, with_su ? n : 0, p.tau_sc);
    out.backhaul.mean_mu_load = load_mu;
    out.backhaul.mean_su_load = load_su;
    out.backhaul.mu_rate =
        load_mu > 0.0 ? p.gamma * p.mu / load_mu
                      : std::numeric_limits<double>::infinity();
    out.backhaul.su_rate =
        load_su > 0.0 ? (1.0 - p.gamma) * p.mu / load_su
                      : std::numeric_limits<double>::infinity();
    out.mu_sir_prob = static_cast<double>(sir_mu) / static_cast<double>(n);
    out.su_sir_prob = static_cast<double>(sir_su) / static_cast<double>(n);
    out.mu_sir_within_prob =
        static_cast<double>(sir_mu_within) / static_cast<double>(n);
    out.su_sir_within_prob =
        static_cast<double>(sir_su_within) / static_cast<double>(n);
    out.rejected_draws = rejects;
    return out;
}

RateEstimate estimate_sir_exceed(const NetworkParams& p, Topology t,
                                 double threshold, const SimOptions& opts) {
    const Window w = resolve_window(p, t, opts, false);
    const int threads = resolve_thread_count(opts.threads);
    const std::uint64_t n = opts.n_realizations;
    if (n == 0)
        throw std::invalid_argument("estimate_sir_exceed: n_realizations == 0");

    std::vector<std::uint8_t> pass(n, 0);
    std::vector<std::uint32_t> rej(n, 0);
    parallel_for(n, threads, [&](std::uint64_t r) {
        for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
            RandomStream rs(opts.seed, r * kMaxAttempts + attempt);
            Scenario sc;
            sc.topology = t;
            sc.window = w;
            sc.mbs = sample_ppp(p.lambda_mc, w, Role::MBS, rs);
            if (!opts.disable_sbs_tier) {
                if (t == Topology::CoverageAided) {
                    sc.sbs = sample_php(p.lambda_sc_prime, sc.mbs, p.R_c, w,
                                        Role::SBS, rs);
                } else {
                    ClusterProcess cp = sample_mcp(p.lambda_sc_prime, p.c_bar, p.R_c,
                                                   w, Role::SBS, rs);
                    sc.cluster_parents = std::move(cp.parents);
                    sc.sbs = std::move(cp.daughters);
                }
            }
            if (sc.mbs.empty()) {
                ++rej[r];
                continue;
            }
            const NearestHit hm = nearest({0.0, 0.0}, sc.mbs, w);
            sc.mu_serving = static_cast<std::int32_t>(hm.index);
            sc.mu_serving_dist = hm.distance;
            sc.stream = rs;
            const SirSample smp = sir_sample(sc, p, Tier::MacroUser);
            if (!smp.valid) {
                ++rej[r];
                continue;
            }
            pass[r] = smp.sir > threshold ? 1 : 0;
            return;
        }
        throw std::runtime_error(
            "estimate_sir_exceed: realization rejected too many times");
    });

    std::uint64_t hits = 0, rejects = 0;
    for (std::uint64_t r = 0; r < n; ++r) {
        hits += pass[r];
        rejects += rej[r];
    }
    const double total_draws = static_cast<double>(n + rejects);
    if (static_cast<double>(rejects) > opts.max_reject_fraction * total_draws)
        throw std::runtime_error("estimate_sir_exceed: rejected draw fraction " +
                                 std::to_string(rejects / total_draws) +
                                 " exceeds the configured limit");
    return binomial_estimate(hits, n, 1.0);
}

RateEstimate mc_laplace(TransformKind kind, double s, double cond,
                        const NetworkParams& p, std::uint64_t n, std::uint64_t seed,
                        double half_extent) {
    if (n == 0) throw std::invalid_argument("mc_laplace: n == 0");
    if (half_extent <= 0.0)
        throw std::invalid_argument("mc_laplace: half_extent must be positive");
    const Window w{half_extent, true};
    const double r2 = cond * cond;
    const double rc2 = p.R_c * p.R_c;
    const Point hole{cond, 0.0};
    const Point origin{0.0, 0.0};

    std::vector<double> vals(n, 0.0);
    parallel_for(n, resolve_thread_count(0), [&](std::uint64_t k) {
        RandomStream rs(seed, k);
        double interference = 0.0;
        const auto add = [&](const PointSet& pts, double power, bool beyond_cond,
                             bool minus_hole) {
            for (const Point q : pts.pts) {
                const double d2 = w.dist2(origin, q);
                if (beyond_cond && d2 <= r2) continue;
                if (minus_hole && w.dist2(hole, q) < rc2) continue;
                const double h = rs.exponential(1.0);
                interference += power * h * pow_d2_neg_half_alpha(d2, p.alpha);
            }
        };
        switch (kind) {
            case TransformKind::MacroBeyondServing:
                add(sample_ppp(p.lambda_mc, w, Role::MBS, rs), p.P_mc, true, false);
                break;
            case TransformKind::SmallBeyondServing:
                add(sample_ppp(p.lambda_sc_prime, w, Role::SBS, rs), p.P_sc, true,
                    false);
                break;
            case TransformKind::SmallMinusHole:
                add(sample_ppp(p.lambda_sc_prime, w, Role::SBS, rs), p.P_sc, false,
                    true);
                break;
            case TransformKind::MacroMinusHole:
                add(sample_ppp(p.lambda_mc, w, Role::MBS, rs), p.P_mc, false, true);
                break;
            case TransformKind::ClusterField: {
                const ClusterProcess cp =
                    sample_mcp(p.lambda_sc_prime, p.c_bar, p.R_c, w, Role::SBS, rs);
                add(cp.daughters, p.P_sc, false, false);
                break;
            }
            case TransformKind::ClusterFieldPalm: {
                const double rad = p.R_c * std::sqrt(rs.uniform());
                const double ang = rs.uniform(0.0, 2.0 * M_PI);
                PointSet own_parent;
                own_parent.role = Role::SBS;
                own_parent.pts.push_back(
                    {rad * std::cos(ang), rad * std::sin(ang)});
                const PointSet own =
                    sample_daughters(own_parent, p.c_bar, p.R_c, w, Role::SBS, rs);
                const ClusterProcess cp =
                    sample_mcp(p.lambda_sc_prime, p.c_bar, p.R_c, w, Role::SBS, rs);
                add(own, p.P_sc, false, false);
                add(cp.daughters, p.P_sc, false, false);
                break;
            }
            case TransformKind::MacroFullPlane:
                add(sample_ppp(p.lambda_mc, w, Role::MBS, rs), p.P_mc, false, false);
                break;
        }
        vals[k] = std::exp(-s * interference);
    });

    double sum = 0.0;
    for (const double v : vals) sum += v;
    const double mean = sum / static_cast<double>(n);
    double ss_dev = 0.0;
    for (const double v : vals) ss_dev += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss_dev / static_cast<double>(n > 1 ? n - 1 : 1));
    RateEstimate out;
    out.mean = mean;
    out.ci_half_width = 1.96 * sd / std::sqrt(static_cast<double>(n));
    out.n = n;
    return out;
}

}  // namespace hetnet
