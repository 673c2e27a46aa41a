#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chainlab/plot.hpp"
#include "chainlab/serialize.hpp"

namespace chainlab {

/// Every field has a JSON key of the same name; CLI flags override them.
/// Empty d and decay select per-experiment defaults.
struct ExperimentConfig {
  std::string experiment = "sandwich";
  std::vector<std::size_t> d;
  double q = 2.0;
  double p = 2.0;
  double eps = 0.25;
  /// Counterexample t; defaults to 1/eps.
  std::optional<double> t;
  /// Contraction t values.
  std::vector<double> t_list = {0.5, 1.0, 2.0, 4.0};
  /// Semiaxis decay; empty selects the experiment default.
  std::string decay;
  /// Explicit body (sandwich, contraction); overrides d and decay.
  std::optional<Json> body;
  std::uint64_t seed = 1;
  std::size_t samples = 100000;
  int n_max = 4;
  std::size_t a_points = 25;
  std::size_t cloud_size = 8192;
  std::size_t bt_cloud_size = 4096;
  std::size_t fresh_size = 256;
  std::size_t combinations = 1000;
  unsigned workers = 1;
  /// Output directory; not embedded in reports so reruns elsewhere stay byte-identical.
  std::string out;
  /// Acceptance bands.
  double ratio_low = 0.2;
  double ratio_high = 50.0;
  double interp_max = 25.0;
  double c_low = 4.0;
  double c_up = 4.0;
  double slack = 1.5;
  double improvement_max = 2.0;
};

struct Assertion {
  std::string id;
  std::string description;
  bool passed = false;
  std::string detail;
};

struct ExperimentResult {
  Json report;
  std::string csv;
  PlotSpec plot;
  std::vector<Assertion> assertions;
  bool passed = true;
};

Json config_to_json(const ExperimentConfig& cfg);
/// Unknown keys and precondition violations raise InvalidArgument.
ExperimentConfig config_from_json(const Json& j);
void validate(const ExperimentConfig& cfg);

/// Semiaxes b_1..b_d from a product of factors separated by '*':
///   k^E          k to the power E
///   log          log(k+2); log^F raises it to F; log(k+C) and log(k+C)^F shift the argument
///   G^k          geometric G^{k-1}
/// e.g. "k^-0.5*log^-1" gives k^{-1/2} / log(k+2).
std::vector<double> parse_decay(const std::string& decay, std::size_t d);

ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Writes report.json, table.csv and plot.svg into dir (created if missing).
void write_outputs(const ExperimentResult& result, const std::string& dir);

}  // namespace chainlab
