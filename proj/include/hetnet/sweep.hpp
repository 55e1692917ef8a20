#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hetnet/config.hpp"
#include "hetnet/montecarlo.hpp"
#include "hetnet/params.hpp"

namespace hetnet {

enum class RunMode { Theory, Sim, Both };

// Evenly spaced sweep over one numeric parameter key. steps == 1 is allowed
// only when from == to.
struct SweepSpec {
  std::string variable;
  double from = 0.0;
  double to = 0.0;
  int steps = 0;

  std::vector<std::string> validation_errors() const;
  std::vector<double> values() const;
};

struct RunRecord {
  std::string sweep_var;
  double value = 0.0;
  Topology topology = Topology::CoverageAided;
  std::string tier;     // "mu" | "su"
  std::string variant;  // "base" for mu; "with_cache" | "no_cache" for su
  std::string source;   // "theory" | "sim"
  double mean = 0.0;
  double ci = 0.0;  // 95% half width; 0 for theory rows
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
};

struct SweepResult {
  std::vector<RunRecord> records;
  // Per-point factor breakdowns, evaluation switches and load estimates.
  std::vector<std::string> meta_lines;
};

// Runs the sweep point by point: theory evaluates the closed-form factors,
// sim runs the full estimator; every point reuses the same seed so sweep
// curves share their random draws.
SweepResult run_sweep(const RunConfig& cfg, Topology t, RunMode mode,
                      const SweepSpec& spec, const SimOptions& sim);

// Header is fixed: sweep_var,value,topology,tier,variant,source,mean,ci,n,seed.
// Numbers are shortest round-trip decimal.
std::string records_to_csv(const std::vector<RunRecord>& records);

// Self-contained SVG with one polyline per (topology, tier, variant, source)
// curve present in the records.
std::string records_to_svg(const std::vector<RunRecord>& records);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace hetnet
