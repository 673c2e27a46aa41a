#pragma once

// Independent reference computations. Nothing here calls into the library.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

namespace oracle {

using Fn2 = std::function<double(double, double)>;

inline double lq_gauge(const std::vector<double>& b, double q, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) s += std::pow(std::abs(y[i]) / b[i], q);
  return std::pow(s, 1.0 / q);
}

inline double l1_gauge(const std::vector<double>& b, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) s += std::abs(y[i]) / b[i];
  return s;
}

/// min over y in R^2 of gauge(y) + t |x - y|_2 by grid search on [-R, R]^2
/// followed by successive local refinement (the objective is convex).
/// `dist` is the ambient norm of a planar vector.
inline double k_grid_2d(const Fn2& gauge, const Fn2& dist, double x1, double x2, double t, double radius) {
  auto obj = [&](double y1, double y2) { return gauge(y1, y2) + t * dist(x1 - y1, x2 - y2); };
  double step = radius / 200.0;
  double best = std::numeric_limits<double>::infinity(), by1 = 0.0, by2 = 0.0;
  for (int i = -200; i <= 200; ++i)
    for (int j = -200; j <= 200; ++j) {
      const double v = obj(i * step, j * step);
      if (v < best) {
        best = v;
        by1 = i * step;
        by2 = j * step;
      }
    }
  for (int round = 0; round < 6; ++round) {
    const double c1 = by1, c2 = by2;
    const double fine = step / 20.0;
    for (int i = -40; i <= 40; ++i)
      for (int j = -40; j <= 40; ++j) {
        const double v = obj(c1 + i * fine, c2 + j * fine);
        if (v < best) {
          best = v;
          by1 = c1 + i * fine;
          by2 = c2 + j * fine;
        }
      }
    step = fine;
  }
  return best;
}

inline double k_grid_2d(const Fn2& gauge, double x1, double x2, double t, double radius) {
  return k_grid_2d(gauge, [](double a, double b) { return std::hypot(a, b); }, x1, x2, t, radius);
}

/// Exact optimal covering radius of a finite point set on the line by m centers.
inline double cover_1d(std::vector<double> pts, std::size_t m) {
  std::sort(pts.begin(), pts.end());
  if (pts.size() <= m) return 0.0;
  auto feasible = [&](double r) {
    std::size_t used = 0, i = 0;
    while (i < pts.size()) {
      ++used;
      const std::size_t first = i;
      // Candidate radii are exact half-differences, so this comparison is exact.
      while (i < pts.size() && pts[i] - pts[first] <= 2.0 * r) ++i;
    }
    return used <= m;
  };
  std::vector<double> cand;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i; j < pts.size(); ++j) cand.push_back((pts[j] - pts[i]) / 2.0);
  std::sort(cand.begin(), cand.end());
  std::size_t lo = 0, hi = cand.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (feasible(cand[mid])) hi = mid;
    else lo = mid + 1;
  }
  return cand[lo];
}

/// Covering radius of the unit circle by m points of the plane: sin(pi / m) for m >= 2.
inline double circle_cover(std::size_t m) { return m >= 2 ? std::sin(std::numbers::pi / static_cast<double>(m)) : 1.0; }

/// E max_i b_i |g_i| by quadrature of the tail 1 - prod_i erf(s / (b_i sqrt 2)).
inline double expected_max_abs(const std::vector<double>& b) {
  double bmax = 0.0;
  for (double v : b) bmax = std::max(bmax, v);
  const double upper = 12.0 * bmax;
  const int steps = 200000;
  const double h = upper / steps;
  double sum = 0.0;
  for (int k = 0; k <= steps; ++k) {
    const double s = k * h;
    double prod = 1.0;
    for (double v : b) prod *= std::erf(s / (v * std::numbers::sqrt2));
    const double w = (k == 0 || k == steps) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    sum += w * (1.0 - prod);
  }
  return sum * h / 3.0;
}

/// E |g|_2 for g standard Gaussian in R^d.
inline double chi_mean(std::size_t d) {
  return std::numbers::sqrt2 * std::exp(std::lgamma((d + 1) / 2.0) - std::lgamma(d / 2.0));
}

/// Central finite-difference gradient.
inline std::vector<double> fd_gradient(const std::function<double(const std::vector<double>&)>& f,
                                       const std::vector<double>& y, double h) {
  std::vector<double> g(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    auto a = y, b = y;
    a[i] += h;
    b[i] -= h;
    g[i] = (f(a) - f(b)) / (2.0 * h);
  }
  return g;
}

/// Smallest Euclidean norm of z with <z, y> = gauge(y) and support(z) <= 1, for a
/// smooth planar body given by its support function, by scanning directions
/// and refining around the best angle.
inline double min_certificate_norm_2d(const Fn2& support, double y1, double y2, double gauge_y) {
  auto candidate = [&](double th, double& norm) {
    const double u1 = std::cos(th), u2 = std::sin(th);
    const double h = support(u1, u2);
    const double z1 = u1 / h, z2 = u2 / h;
    norm = std::hypot(z1, z2);
    return z1 * y1 + z2 * y2;
  };
  const int n = 20000;
  double best_th = 0.0, best_val = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k) {
    const double th = 2.0 * std::numbers::pi * k / n;
    double nn = 0.0;
    const double v = candidate(th, nn);
    if (v > best_val) {
      best_val = v;
      best_th = th;
    }
  }
  double lo = best_th - 2.0 * std::numbers::pi / n, hi = best_th + 2.0 * std::numbers::pi / n;
  for (int it = 0; it < 200; ++it) {
    const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
    double n1 = 0.0, n2 = 0.0;
    if (candidate(m1, n1) < candidate(m2, n2)) lo = m1;
    else hi = m2;
  }
  double norm = 0.0;
  const double v = candidate(0.5 * (lo + hi), norm);
  (void)gauge_y;
  (void)v;
  return norm;
}

}  // namespace oracle
