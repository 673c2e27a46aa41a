#include "chainlab/minnorm.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace chainlab {

namespace {

// Affine minimizer of the points indexed by `set`: weights summing to one.
Eigen::VectorXd affine_min(const std::vector<Point>& pts, const std::vector<std::size_t>& set) {
  const auto k = static_cast<Eigen::Index>(set.size());
  Eigen::MatrixXd m(k + 1, k + 1);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double v = dot(pts[set[static_cast<std::size_t>(i)]], pts[set[static_cast<std::size_t>(j)]]);
      m(i, j) = v;
      m(j, i) = v;
    }
    m(i, k) = 1.0;
    m(k, i) = 1.0;
  }
  m(k, k) = 0.0;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
  rhs(k) = 1.0;
  Eigen::VectorXd sol = m.colPivHouseholderQr().solve(rhs);
  return sol.head(k);
}

Point combine(const std::vector<Point>& pts, const std::vector<std::size_t>& set, const std::vector<double>& lam) {
  Point x(pts.front().size(), 0.0);
  for (std::size_t i = 0; i < set.size(); ++i) axpy(lam[i], pts[set[i]], x);
  return x;
}

}  // namespace

MinNormResult min_norm_point(const std::vector<Point>& points, double tol, int max_iter) {
  require(!points.empty(), "min_norm_point: empty point set");
  const std::size_t n = points.size();
  double scale = 0.0;
  std::size_t start = 0;
  double best = kHuge;
  for (std::size_t j = 0; j < n; ++j) {
    const double v = dot(points[j], points[j]);
    scale = std::max(scale, v);
    if (v < best) {
      best = v;
      start = j;
    }
  }
  std::vector<std::size_t> set{start};
  std::vector<double> lam{1.0};
  Point x = points[start];
  MinNormResult res;

  for (int major = 0; major < max_iter; ++major) {
    std::size_t j = 0;
    double mv = kHuge;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = dot(x, points[i]);
      if (v < mv) {
        mv = v;
        j = i;
      }
    }
    const double xx = dot(x, x);
    if (xx - mv <= tol * std::max(scale, 1e-300) || std::find(set.begin(), set.end(), j) != set.end()) {
      res.converged = true;
      break;
    }
    set.push_back(j);
    lam.push_back(0.0);
    for (int minor = 0; minor < static_cast<int>(n) + 5; ++minor) {
      const Eigen::VectorXd alpha = affine_min(points, set);
      bool positive = true;
      for (Eigen::Index i = 0; i < alpha.size(); ++i)
        if (alpha(i) <= 1e-14) positive = false;
      if (positive) {
        for (std::size_t i = 0; i < set.size(); ++i) lam[i] = alpha(static_cast<Eigen::Index>(i));
        break;
      }
      double theta = 1.0;
      for (std::size_t i = 0; i < set.size(); ++i) {
        const double a = alpha(static_cast<Eigen::Index>(i));
        if (a <= 1e-14 && lam[i] - a > 0.0) theta = std::min(theta, lam[i] / (lam[i] - a));
      }
      for (std::size_t i = 0; i < set.size(); ++i) lam[i] = (1.0 - theta) * lam[i] + theta * alpha(static_cast<Eigen::Index>(i));
      std::vector<std::size_t> keep_set;
      std::vector<double> keep_lam;
      for (std::size_t i = 0; i < set.size(); ++i) {
        if (lam[i] > 1e-14) {
          keep_set.push_back(set[i]);
          keep_lam.push_back(lam[i]);
        }
      }
      if (keep_set.empty()) {
        keep_set.push_back(set.back());
        keep_lam.push_back(1.0);
      }
      double s = 0.0;
      for (double v : keep_lam) s += v;
      for (double& v : keep_lam) v /= s;
      set.swap(keep_set);
      lam.swap(keep_lam);
    }
    x = combine(points, set, lam);
  }
  res.point = x;
  res.weights.assign(n, 0.0);
  for (std::size_t i = 0; i < set.size(); ++i) res.weights[set[i]] += lam[i];
  return res;
}

}  // namespace chainlab
