#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chainlab/norms.hpp"
#include "chainlab/vec.hpp"

namespace chainlab {

/// Finite point set with a human-readable provenance string.
struct PointCloud {
  std::vector<Point> points;
  std::string provenance = "explicit";
};

enum class BracketMethod { Exhaustive, GreedyPacking, Volumetric };
const char* method_name(BracketMethod m);

/// Two-sided estimate lower <= e_n <= upper of an entropy number.
struct EntropyBracket {
  int n = 0;
  double lower = 0.0;
  double upper = 0.0;
  /// 2^{2^n} - 1 (saturated at UINT64_MAX).
  std::uint64_t cardinality_bound = 0;
  BracketMethod method = BracketMethod::GreedyPacking;
  /// Additive cloud-to-set resolution already included in `upper` for set-level brackets.
  double resolution = 0.0;
  /// Net realizing the cloud-level upper value.
  std::vector<Point> net;
};

struct CoverResult {
  std::vector<Point> net;
  double radius = 0.0;
};

struct CoverOptions {
  /// Approximate flop budget for k-center refinement after the greedy pass.
  double refine_budget = 4e8;
  /// Clouds up to this size get an exhaustive single-center search at m = 1.
  std::size_t exhaustive_limit = 64;
};

/// 2^{2^n} - 1, saturating.
std::uint64_t cardinality_cap(int n);

/// Greedy farthest-point net with at most m centers, refined by k-center
/// recentering (centers may leave the cloud). radius is re-verified by a full scan.
CoverResult greedy_cover(const std::vector<Point>& cloud, std::size_t m, const AmbientNorm& ambient,
                         const CoverOptions& opts = {});

/// r such that the cloud holds m+1 points with pairwise distances > 2r (0 if |cloud| <= m).
double packing_bound(const std::vector<Point>& cloud, std::size_t m, const AmbientNorm& ambient);

/// Single bracket at level n (n <= 4).
EntropyBracket entropy_bracket(const std::vector<Point>& cloud, int n, const AmbientNorm& ambient,
                               const CoverOptions& opts = {});

/// Brackets for n = 0..n_max with upper brackets nonincreasing in n: each
/// level's net extends the previous one. If seed_net is given, it is used as
/// an extra candidate net at every level it fits.
std::vector<EntropyBracket> entropy_brackets(const std::vector<Point>& cloud, int n_max, const AmbientNorm& ambient,
                                             const CoverOptions& opts = {},
                                             const std::vector<std::vector<Point>>* seed_nets = nullptr);

/// max over `fresh` of the distance to the nearest cloud point.
double cloud_resolution(const std::vector<Point>& cloud, const std::vector<Point>& fresh, const AmbientNorm& ambient);

/// max over `points` of the distance to the nearest center.
double covering_radius(const std::vector<Point>& points, const std::vector<Point>& centers, const AmbientNorm& ambient);

/// 3 diam 2^{-2^n / d}: valid upper bound on e_n of any d-dimensional set of that diameter.
double volumetric_tail(std::size_t d, double diam, int n);

}  // namespace chainlab
