#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chainlab/body.hpp"
#include "chainlab/chaining.hpp"

namespace chainlab {

struct ContractionRow {
  double t = 0.0;
  int n = 0;
  /// upper_{n+1}(B_t)
  double lhs = 0.0;
  /// (K t upper_n(B_t))^{1/q} upper_n(B) times the slack factor
  double rhs = 0.0;
  double margin = 0.0;
  bool ok = true;
};

struct ContractionReport {
  double q = 2.0;
  double slack = 1.5;
  /// Empirical K per t (after the safety inflation).
  std::vector<double> k_by_t;
  double k_emp = 0.0;
  std::vector<ContractionRow> rows;
  std::vector<std::string> notices;
  std::size_t violations = 0;
};

struct ContractionOptions {
  ProfileOptions profile;
  /// Points of each B_t cloud used for the all-pairs estimate of K.
  std::size_t k_sample = 512;
  double k_inflation = 1.1;
  double slack = 1.5;
};

/// Estimates K = sup ||y-z||_B^q / (t ||y-z||) over B_t samples and checks
/// e_{n+1}(B_t) <= (K t e_n(B_t))^{1/q} e_n(B) on measured brackets for n < n_max.
ContractionReport contraction_check(const Body& body, const AmbientNorm& ambient, double q,
                                    const std::vector<double>& t_list, int n_max,
                                    const ContractionOptions& opts = {});

/// min over sampled pairs of (1 - ||(x+y)/2||_B) / ||x-y||_B^q. q defaults to the body's exponent.
double qconvexity_modulus(const Body& body, std::size_t sample_pairs, std::uint64_t seed, double q = 0.0);

struct UnconditionalRow {
  double t = 0.0;
  double max_ratio = 0.0;
  double bound = 0.0;
  std::size_t pairs = 0;
  bool ok = true;
};

struct UnconditionalReport {
  double q = 2.0;
  std::vector<UnconditionalRow> rows;
  std::vector<std::string> notices;
  bool ok = true;
};

/// B is the unit l_q ball, the ambient the weighted l_p norm. Reports
/// max ||x-y||_q^q / (t ||x-y||) over sampled pairs of B_t against 2^{1+(q-2)_+}.
UnconditionalReport unconditional_assumption_check(double q, const std::vector<double>& weights, double p_ambient,
                                                   const std::vector<double>& t_list, std::size_t samples,
                                                   std::uint64_t seed, double tolerance = 0.01);

struct CounterexampleReport {
  std::size_t d = 0;
  double eps = 0.0;
  double t = 0.0;
  /// t >= 1/eps.
  bool guaranteed = false;
  /// ||v||_2 for the witness v = z / t.
  double witness_norm = 0.0;
  /// Smallest t for which the witness has norm at most 1.
  double witness_threshold = 0.0;
  std::size_t tested = 0;
  std::size_t passed = 0;
  double max_residual = 0.0;
  bool all_pass = false;
  /// Packing lower brackets of the vertex set {+-x_i}, n = 0..4.
  std::vector<double> vertex_entropy_lower;
};

/// Verifies conv{x_1..x_d} within B_t for the perturbed simplex with the explicit certificate.
CounterexampleReport counterexample_check(std::size_t d, double eps, double t, std::size_t combinations = 1000,
                                          std::uint64_t seed = 1);

}  // namespace chainlab
