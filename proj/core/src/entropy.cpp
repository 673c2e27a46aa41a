#include "chainlab/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace chainlab {

namespace {

// Allocation-free ambient distance.
class Metric {
 public:
  explicit Metric(const AmbientNorm& a) : a_(a) {}

  double operator()(ConstVec x, ConstVec y) const {
    if (a_.is_euclidean()) return std::sqrt(sq_dist(x, y));
    const auto& w = a_.weights();
    const double p = a_.p();
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, w[i] * std::fabs(x[i] - y[i]));
    if (std::isinf(p) || m == 0.0) return m;
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double v = w[i] * std::fabs(x[i] - y[i]) / m;
      s += p == 1.0 ? v : (p == 2.0 ? v * v : std::pow(v, p));
    }
    return m * (p == 1.0 ? s : (p == 2.0 ? std::sqrt(s) : std::pow(s, 1.0 / p)));
  }

  double norm(ConstVec x) const { return a_.norm(x); }

 private:
  const AmbientNorm& a_;
};

bool lex_less(ConstVec a, ConstVec b) { return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()); }

// Index of the largest value; ties go to the lexicographically smallest point.
std::size_t argmax_lex(const std::vector<Point>& cloud, const std::vector<double>& value) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < cloud.size(); ++i) {
    if (value[i] > value[best] || (value[i] == value[best] && lex_less(cloud[i], cloud[best]))) best = i;
  }
  return best;
}

struct PlainFps {
  std::vector<std::size_t> order;
  /// delta[k]: distance of the k-th selected point to the previous ones (inf for k = 0).
  std::vector<double> delta;
};

PlainFps plain_fps(const std::vector<Point>& cloud, std::size_t count, const Metric& metric) {
  PlainFps out;
  const std::size_t n = cloud.size();
  count = std::min(count, n);
  if (count == 0) return out;
  std::vector<double> dist(n);
  for (std::size_t i = 0; i < n; ++i) dist[i] = metric.norm(cloud[i]);
  std::size_t cur = argmax_lex(cloud, dist);
  out.order.push_back(cur);
  out.delta.push_back(std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) dist[i] = metric(cloud[i], cloud[cur]);
  while (out.order.size() < count) {
    cur = argmax_lex(cloud, dist);
    out.order.push_back(cur);
    out.delta.push_back(dist[cur]);
    for (std::size_t i = 0; i < n; ++i) dist[i] = std::min(dist[i], metric(cloud[i], cloud[cur]));
  }
  return out;
}

std::vector<double> nearest_distances(const std::vector<Point>& cloud, const std::vector<Point>& centers,
                                      const Metric& metric, std::vector<std::size_t>* label = nullptr) {
  std::vector<double> dist(cloud.size(), std::numeric_limits<double>::infinity());
  if (label) label->assign(cloud.size(), 0);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    for (std::size_t j = 0; j < centers.size(); ++j) {
      const double v = metric(cloud[i], centers[j]);
      if (v < dist[i]) {
        dist[i] = v;
        if (label) (*label)[i] = j;
      }
    }
  }
  return dist;
}

// Adds farthest cloud points to `centers` until it has m entries or the cloud is covered.
void extend_fps(const std::vector<Point>& cloud, std::vector<Point>& centers, std::size_t m, const Metric& metric) {
  std::vector<double> dist;
  if (centers.empty()) {
    dist.resize(cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i) dist[i] = metric.norm(cloud[i]);
    centers.push_back(cloud[argmax_lex(cloud, dist)]);
  }
  dist = nearest_distances(cloud, centers, metric);
  while (centers.size() < m) {
    const std::size_t cur = argmax_lex(cloud, dist);
    if (dist[cur] == 0.0) break;
    centers.push_back(cloud[cur]);
    for (std::size_t i = 0; i < cloud.size(); ++i) dist[i] = std::min(dist[i], metric(cloud[i], cloud[cur]));
  }
}

// Approximate minimax center of `members` by Badoiu-Clarkson steps from `start`.
Point minimax_center(const std::vector<Point>& cloud, const std::vector<std::size_t>& members, const Point& start,
                     const Metric& metric, double& best_radius) {
  Point c = start;
  Point best = start;
  best_radius = std::numeric_limits<double>::infinity();
  constexpr int kSteps = 40;
  for (int k = 0; k <= kSteps; ++k) {
    double far = -1.0;
    std::size_t far_i = members.front();
    for (std::size_t i : members) {
      const double v = metric(cloud[i], c);
      if (v > far) {
        far = v;
        far_i = i;
      }
    }
    if (far < best_radius) {
      best_radius = far;
      best = c;
    }
    if (k == kSteps || far == 0.0) break;
    const double step = 1.0 / static_cast<double>(k + 2);
    const Point& p = cloud[far_i];
    for (std::size_t j = 0; j < c.size(); ++j) c[j] += (p[j] - c[j]) * step;
  }
  return best;
}

// k-center recentering: alternate nearest-center assignment and per-cluster
// minimax recentering while the covering radius decreases.
void refine(const std::vector<Point>& cloud, std::vector<Point>& centers, const Metric& metric, double budget) {
  if (centers.empty() || cloud.empty()) return;
  const double per_iter = static_cast<double>(cloud.size()) * static_cast<double>(centers.size()) *
                          static_cast<double>(cloud.front().size() + 1);
  const int iters = static_cast<int>(std::min(30.0, std::floor(budget / per_iter)));
  if (iters < 1) return;
  std::vector<std::size_t> label;
  std::vector<double> dist = nearest_distances(cloud, centers, metric, &label);
  double radius = *std::max_element(dist.begin(), dist.end());
  for (int it = 0; it < iters && radius > 0.0; ++it) {
    std::vector<std::vector<std::size_t>> members(centers.size());
    for (std::size_t i = 0; i < cloud.size(); ++i) members[label[i]].push_back(i);
    std::vector<Point> trial = centers;
    for (std::size_t j = 0; j < centers.size(); ++j) {
      if (members[j].empty()) continue;
      double cur = 0.0;
      for (std::size_t i : members[j]) cur = std::max(cur, dist[i]);
      double r = 0.0;
      Point c = minimax_center(cloud, members[j], centers[j], metric, r);
      if (r < cur) trial[j] = std::move(c);
    }
    std::vector<std::size_t> new_label;
    std::vector<double> new_dist = nearest_distances(cloud, trial, metric, &new_label);
    const double new_radius = *std::max_element(new_dist.begin(), new_dist.end());
    if (!(new_radius < radius)) break;
    const bool stalled = new_radius > radius * (1.0 - 1e-9);
    centers.swap(trial);
    label.swap(new_label);
    dist.swap(new_dist);
    radius = new_radius;
    if (stalled) break;
  }
}

CoverResult exhaustive_single(const std::vector<Point>& cloud, const Metric& metric) {
  std::vector<Point> cand = cloud;
  for (std::size_t i = 0; i < cloud.size(); ++i)
    for (std::size_t j = i + 1; j < cloud.size(); ++j) {
      Point mid(cloud[i].size());
      for (std::size_t k = 0; k < mid.size(); ++k) mid[k] = 0.5 * (cloud[i][k] + cloud[j][k]);
      cand.push_back(std::move(mid));
    }
  CoverResult best;
  best.radius = std::numeric_limits<double>::infinity();
  for (const auto& c : cand) {
    double r = 0.0;
    for (const auto& p : cloud) r = std::max(r, metric(p, c));
    if (r < best.radius || (r == best.radius && lex_less(c, best.net.front()))) {
      best.radius = r;
      best.net = {c};
    }
  }
  return best;
}

double packing_radius(double delta) {
  if (!(delta > 0.0)) return 0.0;
  return std::nextafter(0.5 * delta, 0.0);
}

constexpr double kPackingBudget = 3e8;
constexpr int kPackingBisections = 24;

// Greedy independent set: walk `order`, keep points farther than thr from every
// kept point, stop at k. Returns the minimum pairwise distance of the k kept
// points, or 0 if fewer than k were found.
double threshold_packing(const std::vector<Point>& cloud, const std::vector<std::size_t>& order, std::size_t k,
                         double thr, const Metric& metric) {
  std::vector<std::size_t> kept;
  double dmin = std::numeric_limits<double>::infinity();
  for (std::size_t idx : order) {
    double near = std::numeric_limits<double>::infinity();
    for (std::size_t j : kept) {
      near = std::min(near, metric(cloud[idx], cloud[j]));
      if (near <= thr) break;
    }
    if (near <= thr) continue;
    kept.push_back(idx);
    dmin = std::min(dmin, near);
    if (kept.size() == k) return dmin;
  }
  return 0.0;
}

// Largest minimum pairwise distance of k cloud points found by bisecting the
// greedy threshold over the lexicographic and farthest-point orders. `known`
// is a distance already attained (the farthest-point packing); `hi` bounds it.
double best_packing_distance(const std::vector<Point>& cloud, const std::vector<std::size_t>& fps_order, std::size_t k,
                             double known, double hi, const Metric& metric) {
  const double n = static_cast<double>(cloud.size());
  const double cost = 2.0 * kPackingBisections * n * static_cast<double>(k) * static_cast<double>(cloud.front().size() + 1);
  if (k < 2 || k >= cloud.size() || cost > kPackingBudget || !(hi > known)) return known;
  std::vector<std::size_t> lex(cloud.size());
  for (std::size_t i = 0; i < lex.size(); ++i) lex[i] = i;
  std::sort(lex.begin(), lex.end(), [&](std::size_t a, std::size_t b) {
    return lex_less(cloud[a], cloud[b]) || (!lex_less(cloud[b], cloud[a]) && a < b);
  });
  std::vector<std::size_t> fps = fps_order;
  std::vector<char> seen(cloud.size(), 0);
  for (std::size_t i : fps) seen[i] = 1;
  for (std::size_t i = 0; i < cloud.size(); ++i)
    if (!seen[i]) fps.push_back(i);

  double best = known, lo = known;
  for (int it = 0; it < kPackingBisections; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double got = std::max(threshold_packing(cloud, lex, k, mid, metric), threshold_packing(cloud, fps, k, mid, metric));
    if (got > mid) {
      best = std::max(best, got);
      lo = got;
    } else {
      hi = mid;
    }
    if (!(hi > lo)) break;
  }
  return best;
}

}  // namespace

const char* method_name(BracketMethod m) {
  switch (m) {
    case BracketMethod::Exhaustive: return "exhaustive";
    case BracketMethod::GreedyPacking: return "greedy+packing";
    case BracketMethod::Volumetric: return "volumetric";
  }
  return "unknown";
}

std::uint64_t cardinality_cap(int n) {
  require(n >= 0, "entropy level n must be nonnegative");
  if (n >= 6) return std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t bits = std::uint64_t{1} << n;
  if (bits >= 64) return std::numeric_limits<std::uint64_t>::max();
  return (std::uint64_t{1} << bits) - 1;
}

double covering_radius(const std::vector<Point>& points, const std::vector<Point>& centers, const AmbientNorm& ambient) {
  require(!centers.empty(), "covering_radius: empty net");
  const Metric metric(ambient);
  const auto dist = nearest_distances(points, centers, metric);
  return dist.empty() ? 0.0 : *std::max_element(dist.begin(), dist.end());
}

double cloud_resolution(const std::vector<Point>& cloud, const std::vector<Point>& fresh, const AmbientNorm& ambient) {
  if (fresh.empty()) return 0.0;
  return covering_radius(fresh, cloud, ambient);
}

CoverResult greedy_cover(const std::vector<Point>& cloud, std::size_t m, const AmbientNorm& ambient,
                         const CoverOptions& opts) {
  require(!cloud.empty(), "greedy_cover: empty cloud");
  require(m >= 1, "greedy_cover: m must be >= 1");
  for (const auto& p : cloud) require_same_dim(p.size(), cloud.front().size(), "greedy_cover cloud");
  ambient.check_dim(cloud.front().size());
  const Metric metric(ambient);
  CoverResult res;
  if (m >= cloud.size()) {
    res.net = cloud;
    res.radius = 0.0;
    return res;
  }
  extend_fps(cloud, res.net, m, metric);
  refine(cloud, res.net, metric, opts.refine_budget);
  res.radius = covering_radius(cloud, res.net, ambient);
  if (m == 1 && cloud.size() <= opts.exhaustive_limit) {
    CoverResult ex = exhaustive_single(cloud, metric);
    if (ex.radius <= res.radius) res = std::move(ex);
  }
  return res;
}

double packing_bound(const std::vector<Point>& cloud, std::size_t m, const AmbientNorm& ambient) {
  require(m >= 1, "packing_bound: m must be >= 1");
  if (cloud.size() <= m) return 0.0;
  const Metric metric(ambient);
  const PlainFps fps = plain_fps(cloud, m + 1, metric);
  return packing_radius(best_packing_distance(cloud, fps.order, m + 1, fps.delta[m], 2.0 * fps.delta[1], metric));
}

std::vector<EntropyBracket> entropy_brackets(const std::vector<Point>& cloud, int n_max, const AmbientNorm& ambient,
                                             const CoverOptions& opts,
                                             const std::vector<std::vector<Point>>* seed_nets) {
  require(!cloud.empty(), "entropy_brackets: empty cloud");
  require(n_max >= 0, "entropy_brackets: n must be nonnegative");
  require(n_max <= 4, "entropy_brackets: explicit nets are limited to n <= 4; use volumetric_tail beyond");
  for (const auto& p : cloud) require_same_dim(p.size(), cloud.front().size(), "entropy_brackets cloud");
  ambient.check_dim(cloud.front().size());
  const Metric metric(ambient);
  const std::size_t N = cloud.size();

  const std::size_t top = static_cast<std::size_t>(std::min<std::uint64_t>(cardinality_cap(n_max), N));
  const PlainFps fps = plain_fps(cloud, std::min(N, top + 1), metric);

  std::vector<EntropyBracket> out;
  std::vector<Point> centers;
  for (int n = 0; n <= n_max; ++n) {
    EntropyBracket br;
    br.n = n;
    br.cardinality_bound = cardinality_cap(n);
    br.method = BracketMethod::GreedyPacking;
    const std::uint64_t m = br.cardinality_bound;
    if (m >= N) {
      br.upper = 0.0;
      br.lower = 0.0;
      br.net = cloud;
      out.push_back(std::move(br));
      centers = cloud;
      continue;
    }
    br.lower = packing_radius(best_packing_distance(cloud, fps.order, static_cast<std::size_t>(m) + 1,
                                                    fps.delta[static_cast<std::size_t>(m)], 2.0 * fps.delta[1], metric));
    extend_fps(cloud, centers, static_cast<std::size_t>(m), metric);
    refine(cloud, centers, metric, opts.refine_budget);
    br.upper = covering_radius(cloud, centers, ambient);
    br.net = centers;
    if (n == 0 && N <= opts.exhaustive_limit) {
      CoverResult ex = exhaustive_single(cloud, metric);
      if (ex.radius <= br.upper) {
        br.upper = ex.radius;
        br.net = ex.net;
        centers = ex.net;
        br.method = BracketMethod::Exhaustive;
      }
    }
    if (seed_nets && static_cast<std::size_t>(n) < seed_nets->size() && !(*seed_nets)[n].empty() &&
        (*seed_nets)[n].size() <= m) {
      const double r = covering_radius(cloud, (*seed_nets)[n], ambient);
      if (r < br.upper) {
        br.upper = r;
        br.net = (*seed_nets)[n];
        centers = br.net;
      }
    }
    if (!out.empty() && out.back().upper < br.upper) {
      br.upper = out.back().upper;
      br.net = out.back().net;
      centers = br.net;
    }
    out.push_back(std::move(br));
  }
  return out;
}

EntropyBracket entropy_bracket(const std::vector<Point>& cloud, int n, const AmbientNorm& ambient,
                               const CoverOptions& opts) {
  require(n >= 0, "entropy_bracket: n must be nonnegative");
  require(n <= 4, "entropy_bracket: explicit nets are limited to n <= 4; use volumetric_tail beyond");
  return entropy_brackets(cloud, n, ambient, opts).back();
}

double volumetric_tail(std::size_t d, double diam, int n) {
  require(d >= 1, "volumetric_tail: d must be >= 1");
  require(diam >= 0.0, "volumetric_tail: diam must be nonnegative");
  require(n >= 0, "volumetric_tail: n must be nonnegative");
  return 3.0 * diam * std::exp2(-std::ldexp(1.0, n) / static_cast<double>(d));
}

}  // namespace chainlab
