#include "hetnet/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "hetnet/analytic.hpp"

namespace hetnet {

namespace {

std::string fmt(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

RunRecord make_record(const SweepSpec& spec, double value, Topology t,
                      const std::string& tier, const std::string& variant,
                      const std::string& source, double mean, double ci,
                      std::uint64_t n, std::uint64_t seed) {
    RunRecord r;
    r.sweep_var = spec.variable;
    r.value = value;
    r.topology = t;
    r.tier = tier;
    r.variant = variant;
    r.source = source;
    r.mean = mean;
    r.ci = ci;
    r.n = n;
    r.seed = seed;
    return r;
}

}  // namespace

std::vector<std::string> SweepSpec::validation_errors() const {
    std::vector<std::string> errs;
    const auto& keys = numeric_config_keys();
    if (std::find(keys.begin(), keys.end(), variable) == keys.end())
        errs.push_back("sweep variable '" + variable + "' is not a numeric parameter key");
    if (!std::isfinite(from) || !std::isfinite(to))
        errs.push_back("sweep bounds must be finite");
    if (steps < 1) errs.push_back("sweep needs steps >= 1");
    if (steps == 1 && from != to)
        errs.push_back("steps == 1 requires from == to");
    if (steps >= 2 && !(from < to))
        errs.push_back("sweep needs from < to");
    return errs;
}

std::vector<double> SweepSpec::values() const {
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(std::max(steps, 0)));
    if (steps == 1) {
        v.push_back(from);
        return v;
    }
    for (int i = 0; i < steps; ++i)
        v.push_back(from + (to - from) * static_cast<double>(i) /
                               static_cast<double>(steps - 1));
    return v;
}

SweepResult run_sweep(const RunConfig& cfg, Topology t, RunMode mode,
                      const SweepSpec& spec, const SimOptions& sim) {
    const std::vector<std::string> spec_errs = spec.validation_errors();
    if (!spec_errs.empty()) throw std::invalid_argument("sweep: " + spec_errs.front());

    SweepResult out;
    {
        std::ostringstream head;
        head << "options"
             << " noise_like_factor=" << cfg.analytic.noise_like_factor
             << " integrate_serving_to_infinity=" << cfg.analytic.integrate_to_infinity
             << " su_backhaul_uses_own_threshold="
             << cfg.analytic.tau_sc_in_su_backhaul_cap
             << " su_backhaul_uses_remaining_fraction="
             << cfg.analytic.one_minus_gamma_for_su
             << " seed=" << sim.seed << " realizations=" << sim.n_realizations;
        out.meta_lines.push_back(head.str());
    }

    const bool want_theory = mode != RunMode::Sim;
    const bool want_sim = mode != RunMode::Theory;
    for (const double value : spec.values()) {
        NetworkParams p = cfg.params;
        set_numeric_param(p, spec.variable, value);
        validate(p, t);

        if (want_theory) {
            const auto mu = analytic::avg_rate_mu(t, p, cfg.analytic);
            const auto su = analytic::avg_rate_su(t, p, cfg.analytic, true);
            const auto sunc = analytic::avg_rate_su(t, p, cfg.analytic, false);
            out.records.push_back(make_record(spec, value, t, "mu", "base", "theory",
                                              mu.avg_rate, 0.0, 0, sim.seed));
            out.records.push_back(make_record(spec, value, t, "su", "with_cache",
                                              "theory", su.avg_rate, 0.0, 0, sim.seed));
            out.records.push_back(make_record(spec, value, t, "su", "no_cache",
                                              "theory", sunc.avg_rate, 0.0, 0,
                                              sim.seed));
            std::ostringstream m;
            m << "var=" << spec.variable << " value=" << fmt(value)
              << " topology=" << to_string(t) << " source=theory";
            for (const auto& [k, v] : mu.factors) m << ' ' << k << '=' << fmt(v);
            for (const auto& [k, v] : su.factors) m << ' ' << k << '=' << fmt(v);
            m << " rate_mu=" << fmt(mu.avg_rate) << " rate_su=" << fmt(su.avg_rate)
              << " rate_su_no_cache=" << fmt(sunc.avg_rate);
            if (mu.gamma_degenerate || su.gamma_degenerate) m << " gamma_degenerate=1";
            out.meta_lines.push_back(m.str());
        }
        if (want_sim) {
            SimOptions o = sim;
            const SimResult res = estimate_avg_rates(p, t, o);
            out.records.push_back(make_record(spec, value, t, "mu", "base", "sim",
                                              res.mu.mean, res.mu.ci_half_width,
                                              res.mu.n, sim.seed));
            out.records.push_back(make_record(spec, value, t, "su", "with_cache", "sim",
                                              res.su.mean, res.su.ci_half_width,
                                              res.su.n, sim.seed));
            out.records.push_back(
                make_record(spec, value, t, "su", "no_cache", "sim",
                            res.su_no_cache.mean, res.su_no_cache.ci_half_width,
                            res.su_no_cache.n, sim.seed));
            std::ostringstream m;
            m << "var=" << spec.variable << " value=" << fmt(value)
              << " topology=" << to_string(t) << " source=sim"
              << " load_mu=" << fmt(res.backhaul.mean_mu_load)
              << " load_su=" << fmt(res.backhaul.mean_su_load)
              << " bh_rate_mu=" << fmt(res.backhaul.mu_rate)
              << " bh_rate_su=" << fmt(res.backhaul.su_rate)
              << " sir_mu=" << fmt(res.mu_sir_prob) << " sir_su=" << fmt(res.su_sir_prob)
              << " rejected=" << res.rejected_draws;
            out.meta_lines.push_back(m.str());
        }
    }
    return out;
}

std::string records_to_csv(const std::vector<RunRecord>& records) {
    std::string out = "sweep_var,value,topology,tier,variant,source,mean,ci,n,seed\n";
    for (const RunRecord& r : records) {
        out += r.sweep_var;
        out += ',';
        out += fmt(r.value);
        out += ',';
        out += to_string(r.topology);
        out += ',';
        out += r.tier;
        out += ',';
        out += r.variant;
        out += ',';
        out += r.source;
        out += ',';
        out += fmt(r.mean);
        out += ',';
        out += fmt(r.ci);
        out += ',';
        out += std::to_string(r.n);
        out += ',';
        out += std::to_string(r.seed);
        out += '\n';
    }
    return out;
}

std::string records_to_svg(const std::vector<RunRecord>& records) {
    struct Series {
        std::string label;
        std::string color;
        bool dashed = false;
        std::vector<std::pair<double, double>> pts;
    };
    std::map<std::string, Series> series;
    double xmin = INFINITY, xmax = -INFINITY, ymax = 0.0;
    for (const RunRecord& r : records) {
        const std::string key = std::string(to_string(r.topology)) + "/" + r.tier + "/" +
                                r.variant + "/" + r.source;
        Series& s = series[key];
        if (s.label.empty()) {
            s.label = key;
            s.dashed = r.source == "theory";
            if (r.tier == "mu") {
                s.color = "#d62728";
            } else {
                s.color = r.variant == "with_cache" ? "#1f77b4" : "#2ca02c";
            }
        }
        s.pts.push_back({r.value, r.mean});
        xmin = std::min(xmin, r.value);
        xmax = std::max(xmax, r.value);
        ymax = std::max(ymax, r.mean + r.ci);
    }
    if (series.empty()) {
        xmin = 0.0;
        xmax = 1.0;
    }
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!(ymax > 0.0)) ymax = 1.0;
    ymax *= 1.05;

    const double kw = 720.0, kh = 480.0;
    const double l = 70.0, rgt = 20.0, top = 20.0, bot = 50.0;
    const auto X = [&](double v) { return l + (v - xmin) / (xmax - xmin) * (kw - l - rgt); };
    const auto Y = [&](double v) { return kh - bot - v / ymax * (kh - top - bot); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kw << "\" height=\""
        << kh << "\" viewBox=\"0 0 " << kw << ' ' << kh << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<line x1=\"" << l << "\" y1=\"" << kh - bot << "\" x2=\"" << kw - rgt
        << "\" y2=\"" << kh - bot << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << l << "\" y1=\"" << top << "\" x2=\"" << l << "\" y2=\""
        << kh - bot << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 4.0;
        const double yv = ymax * i / 4.0;
        svg << "<text x=\"" << X(xv) << "\" y=\"" << kh - bot + 18
            << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt(xv) << "</text>\n";
        svg << "<text x=\"" << l - 8 << "\" y=\"" << Y(yv) + 4
            << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(yv) << "</text>\n";
    }
    double ly = top + 10.0;
    for (const auto& [key, s] : series) {
        svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"";
        if (s.dashed) svg << " stroke-dasharray=\"6 4\"";
        svg << " points=\"";
        for (const auto& [x, y] : s.pts) svg << X(x) << ',' << Y(y) << ' ';
        svg << "\"/>\n";
        svg << "<line x1=\"" << kw - 250 << "\" y1=\"" << ly << "\" x2=\"" << kw - 220
            << "\" y2=\"" << ly << "\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"";
        if (s.dashed) svg << " stroke-dasharray=\"6 4\"";
        svg << "/>\n";
        svg << "<text x=\"" << kw - 214 << "\" y=\"" << ly + 4
            << "\" font-size=\"11\">" << s.label << "</text>\n";
        ly += 16.0;
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace hetnet
