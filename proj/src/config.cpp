#include "hetnet/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace hetnet {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& v, int line) {
    const char* begin = v.c_str();
    char* end = nullptr;
    const double x = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw std::invalid_argument("config line " + std::to_string(line) +
                                    ": value for '" + key + "' is not a number: " + v);
    return x;
}

bool parse_bool(const std::string& key, const std::string& v, int line) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw std::invalid_argument("config line " + std::to_string(line) + ": value for '" +
                                key + "' must be true/false/1/0, got: " + v);
}

using NumericSetter = void (*)(NetworkParams&, double);

const std::map<std::string, NumericSetter>& numeric_setters() {
    static const std::map<std::string, NumericSetter> table = {
        {"lambda_cr", [](NetworkParams& p, double v) { p.lambda_cr = v; }},
        {"lambda_mc", [](NetworkParams& p, double v) { p.lambda_mc = v; }},
        {"lambda_sc_prime", [](NetworkParams& p, double v) { p.lambda_sc_prime = v; }},
        {"lambda_ut", [](NetworkParams& p, double v) { p.lambda_ut = v; }},
        {"lambda_ut_m", [](NetworkParams& p, double v) { p.lambda_ut_m = v; }},
        {"c_bar", [](NetworkParams& p, double v) { p.c_bar = v; }},
        {"R_c", [](NetworkParams& p, double v) { p.R_c = v; }},
        {"P_mc", [](NetworkParams& p, double v) { p.P_mc = v; }},
        {"P_sc", [](NetworkParams& p, double v) { p.P_sc = v; }},
        {"alpha", [](NetworkParams& p, double v) { p.alpha = v; }},
        {"tau_mc", [](NetworkParams& p, double v) { p.tau_mc = v; }},
        {"tau_sc", [](NetworkParams& p, double v) { p.tau_sc = v; }},
        {"mu", [](NetworkParams& p, double v) { p.mu = v; }},
        {"gamma", [](NetworkParams& p, double v) { p.gamma = v; }},
        {"eta", [](NetworkParams& p, double v) { p.eta = v; }},
        {"F_sc", [](NetworkParams& p, double v) { p.F_sc = v; }},
        {"F", [](NetworkParams& p, double v) { p.F = v; }},
        {"chunk_size_bytes", [](NetworkParams& p, double v) { p.chunk_size_bytes = v; }},
        {"dist_k", [](NetworkParams& p, double v) { p.dist_k = v; }},
        {"dist_nu", [](NetworkParams& p, double v) { p.dist_nu = v; }},
    };
    return table;
}

const std::map<std::string, bool analytic::AnalyticOptions::*>& bool_options() {
    static const std::map<std::string, bool analytic::AnalyticOptions::*> table = {
        {"noise_like_factor", &analytic::AnalyticOptions::noise_like_factor},
        {"integrate_serving_to_infinity",
         &analytic::AnalyticOptions::integrate_to_infinity},
        {"su_backhaul_uses_own_threshold",
         &analytic::AnalyticOptions::tau_sc_in_su_backhaul_cap},
        {"su_backhaul_uses_remaining_fraction",
         &analytic::AnalyticOptions::one_minus_gamma_for_su},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& numeric_config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> v;
        for (const auto& [k, fn] : numeric_setters()) v.push_back(k);
        return v;
    }();
    return keys;
}

void set_numeric_param(NetworkParams& p, const std::string& key, double value) {
    const auto it = numeric_setters().find(key);
    if (it == numeric_setters().end())
        throw std::invalid_argument("unknown parameter key: " + key);
    it->second(p, value);
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::map<std::string, std::pair<std::string, int>> seen;  // key -> (value, line)
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string s = trim(raw);
        if (s.empty()) continue;
        const std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line) +
                                        ": expected key=value, got: " + s);
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument("config line " + std::to_string(line) +
                                        ": empty key or value");
        const bool known = numeric_setters().count(key) || bool_options().count(key) ||
                           key == "F_sc_bytes" || key == "F_bytes";
        if (!known)
            throw std::invalid_argument("config line " + std::to_string(line) +
                                        ": unknown key '" + key + "'");
        if (seen.count(key))
            throw std::invalid_argument("config line " + std::to_string(line) +
                                        ": duplicate key '" + key + "' (first on line " +
                                        std::to_string(seen[key].second) + ")");
        seen[key] = {value, line};
    }

    if (seen.count("F_sc") && seen.count("F_sc_bytes"))
        throw std::invalid_argument("config: both F_sc and F_sc_bytes set");
    if (seen.count("F") && seen.count("F_bytes"))
        throw std::invalid_argument("config: both F and F_bytes set");

    // chunk_size_bytes first so byte-valued keys convert against the
    // configured chunk size regardless of line order.
    if (const auto it = seen.find("chunk_size_bytes"); it != seen.end())
        cfg.params.chunk_size_bytes =
            parse_double(it->first, it->second.first, it->second.second);

    for (const auto& [key, vl] : seen) {
        if (key == "chunk_size_bytes") continue;
        if (const auto nit = numeric_setters().find(key); nit != numeric_setters().end()) {
            nit->second(cfg.params, parse_double(key, vl.first, vl.second));
        } else if (const auto bit = bool_options().find(key); bit != bool_options().end()) {
            cfg.analytic.*(bit->second) = parse_bool(key, vl.first, vl.second);
        } else if (key == "F_sc_bytes") {
            cfg.params.F_sc =
                parse_double(key, vl.first, vl.second) / cfg.params.chunk_size_bytes;
        } else if (key == "F_bytes") {
            cfg.params.F =
                parse_double(key, vl.first, vl.second) / cfg.params.chunk_size_bytes;
        }
    }

    for (const auto& [key, fn] : numeric_setters()) {
        const bool bytes_alias = (key == "F_sc" && seen.count("F_sc_bytes")) ||
                                 (key == "F" && seen.count("F_bytes"));
        if (!seen.count(key) && !bytes_alias) cfg.defaulted_keys.push_back(key);
    }
    for (const auto& [key, member] : bool_options())
        if (!seen.count(key)) cfg.defaulted_keys.push_back(key);
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

}  // namespace hetnet
