#pragma once

#include <cstdint>
#include <vector>

#include "chainlab/body.hpp"
#include "chainlab/chaining.hpp"

namespace chainlab {

struct McEstimate {
  double mean = 0.0;
  /// Sample standard deviation over sqrt(samples).
  double stderr_ = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// Samples per substream chunk in mc_sup.
inline constexpr std::size_t kMcChunk = 4096;

/// E sup_{x in B} <x, g> estimated as the mean dual gauge of standard Gaussian vectors.
/// Chunk c draws from Rng::substream(seed, c); chunks are merged in index order.
McEstimate mc_sup(const Body& body, std::size_t samples, std::uint64_t seed);

struct SandwichConfig {
  double p = 2.0;
  int n_max = 4;
  /// q for the q-convex bound; 0 picks max(2, exponent of B).
  double q = 0.0;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  ProfileOptions profile;
  /// Empty means default_a_grid.
  std::vector<double> a_grid;
  /// Fresh B samples on which the built sequence is evaluated.
  std::size_t test_cloud = 4096;
  double c_low = 4.0;
  double c_up = 4.0;
};

struct BoundReport {
  double dudley = 0.0;
  double interpolation = 0.0;
  double best_a = 0.0;
  double qconvex = 0.0;
  double q = 2.0;
  double trivial_lower = 0.0;
  double gamma_upper_certified = 0.0;
  McEstimate mc;
  double dudley_ratio = 0.0;
  double interpolation_ratio = 0.0;
  double qconvex_ratio = 0.0;
  double trivial_lower_ratio = 0.0;
  double gamma_ratio = 0.0;
  /// trivial_lower <= c_low mc and mc <= c_up gamma_upper_certified.
  bool sandwich_ok = false;
  EntropyProfile profile;
  InterpolationResult interp;
};

/// All chaining bounds of B together with mc_sup. Euclidean ambient only.
BoundReport sandwich_report(const Body& body, const AmbientNorm& ambient, const SandwichConfig& config);

}  // namespace chainlab
