#pragma once

#include <string>
#include <vector>

#include "hetnet/analytic.hpp"
#include "hetnet/params.hpp"

namespace hetnet {

// Parsed run configuration: network parameters plus evaluation switches.
struct RunConfig {
  NetworkParams params;
  analytic::AnalyticOptions analytic;
  // Known keys the file did not set, left at built-in defaults.
  std::vector<std::string> defaulted_keys;
};

// Flat key=value format, one pair per line, '#' starts a comment. Unknown or
// duplicate keys raise std::invalid_argument naming the offending line.
// Content sizes may be given in chunks (F_sc, F) or bytes (F_sc_bytes,
// F_bytes, divided by chunk_size_bytes), but not both for the same quantity.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Numeric parameter keys accepted by the parser and by sweep variables.
const std::vector<std::string>& numeric_config_keys();

// Assigns one numeric parameter by key; throws on unknown key.
void set_numeric_param(NetworkParams& p, const std::string& key, double value);

}  // namespace hetnet
