#pragma once

#include <vector>

#include "chainlab/vec.hpp"

namespace chainlab {

struct MinNormResult {
  Point point;
  /// Convex weights over the input points (same order).
  std::vector<double> weights;
  bool converged = false;
};

/// Minimum Euclidean norm point of conv(points) by Wolfe's algorithm.
MinNormResult min_norm_point(const std::vector<Point>& points, double tol = 1e-12, int max_iter = 20000);

}  // namespace chainlab
