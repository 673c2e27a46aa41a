#include "chainlab/tails.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "chainlab/entropy.hpp"

namespace chainlab {

namespace {

double log_add(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::fabs(a - b)));
}

// Radii of the coordinate prefixes [0, k) and suffixes [k, d) of an l_r ball
// with semiaxes c (zero entries allowed) measured in weighted l_p.
void prefix_suffix_radii(double p, const std::vector<double>& w, double r, const std::vector<double>& c,
                         std::vector<double>& head, std::vector<double>& tail) {
  const std::size_t d = c.size();
  std::vector<double> a(d);
  for (std::size_t i = 0; i < d; ++i) a[i] = w[i] * c[i];
  head.assign(d + 1, 0.0);
  tail.assign(d + 1, 0.0);
  if (p >= r) {
    for (std::size_t k = 1; k <= d; ++k) head[k] = std::max(head[k - 1], a[k - 1]);
    for (std::size_t k = d; k-- > 0;) tail[k] = std::max(tail[k + 1], a[k]);
    return;
  }
  const double e = std::isinf(r) ? p : p * r / (r - p);
  std::vector<double> pw(d);
  for (std::size_t i = 0; i < d; ++i) pw[i] = a[i] == 0.0 ? 0.0 : std::pow(a[i], e);
  double s = 0.0;
  for (std::size_t k = 1; k <= d; ++k) {
    s += pw[k - 1];
    head[k] = std::pow(s, 1.0 / e);
  }
  s = 0.0;
  for (std::size_t k = d; k-- > 0;) {
    s += pw[k];
    tail[k] = std::pow(s, 1.0 / e);
  }
}

struct Candidate {
  double value = kInf;
  const char* model = "none";
  void offer(double v, const char* m) {
    if (v < value) {
      value = v;
      model = m;
    }
  }
};

Candidate compute(const SetRef& set, int n) {
  require(set.body != nullptr && set.ambient != nullptr, "analytic bound: incomplete set reference");
  require(n >= 0, "analytic bound: n must be nonnegative");
  const Body& body = *set.body;
  const AmbientNorm& ambient = *set.ambient;
  const std::size_t d = body.dim();
  Candidate best;
  const double radius = ambient_radius(body, ambient);
  best.offer(radius, "radius");

  const WeightedLr* lr = body.lr_ball();
  if (lr == nullptr) {
    best.offer(volumetric_tail(d, 2.0 * radius, n), "volumetric");
    return best;
  }

  const std::vector<double> ones(d, 1.0);
  const double p = ambient.is_euclidean() ? 2.0 : ambient.p();
  const std::vector<double>& w = ambient.is_euclidean() ? ones : ambient.weights();
  std::vector<double> c = lr->semiaxes();
  std::size_t eff_dim = d;

  std::vector<double> head, tail;
  prefix_suffix_radii(p, w, lr->r(), c, head, tail);

  if (set.t) {
    const double t = *set.t;
    if (body.kind() == Body::Kind::Octahedron) {
      std::vector<double> omega;
      double budget = 0.0;
      octahedron_pattern_weights(body, ambient, t, omega, budget);
      if (max_pattern_size(omega, budget) == 0) {
        best.offer(0.0, "zero");
        return best;
      }
      // Coordinates that can never be in a support drop out.
      double rmax = 0.0;
      eff_dim = 0;
      for (std::size_t i = 0; i < d; ++i) {
        if (omega[i] <= budget) {
          ++eff_dim;
          rmax = std::max(rmax, w[i] * c[i]);
        } else {
          c[i] = 0.0;
        }
      }
      prefix_suffix_radii(p, w, 1.0, c, head, tail);
      best.offer(rmax, "radius");
      best.offer(sparsity_net_bound(omega, budget, rmax, n), "sparsity-net");
    } else {
      std::vector<double> cc;
      double ec = 2.0;
      dilation_ellipsoid(body, ambient, cc, ec);
      const double dil = std::pow(t, 1.0 / (lr->r() - 1.0));
      for (double& v : cc) v *= dil;
      std::vector<double> h2, t2;
      prefix_suffix_radii(p, w, ec, cc, h2, t2);
      for (std::size_t k = 0; k <= d; ++k) {
        head[k] = std::min(head[k], h2[k]);
        tail[k] = std::min(tail[k], t2[k]);
      }
      best.offer(head[d], "radius");
    }
  }
  best.offer(volumetric_tail(eff_dim, 2.0 * head[d], n), "volumetric");
  for (std::size_t k = 1; k < d; ++k) {
    const double h = std::min(head[k], volumetric_tail(k, 2.0 * head[k], n));
    best.offer(h + tail[k], "head-tail");
  }
  return best;
}

}  // namespace

void octahedron_pattern_weights(const Body& body, const AmbientNorm& ambient, double t, std::vector<double>& omega,
                                double& budget) {
  require(body.kind() == Body::Kind::Octahedron, "pattern weights exist for octahedra only");
  ambient.check_dim(body.dim());
  const auto& b = body.lr_ball()->semiaxes();
  const std::size_t d = b.size();
  omega.assign(d, 0.0);
  if (ambient.is_euclidean()) {
    for (std::size_t i = 0; i < d; ++i) omega[i] = 1.0 / (b[i] * b[i]);
    budget = t * t;
    return;
  }
  const double ps = ambient.dual_exponent();
  const auto& w = ambient.weights();
  if (std::isinf(ps)) {
    // Dual norm is a max: each support coordinate must satisfy 1/(b_i w_i) <= t.
    for (std::size_t i = 0; i < d; ++i) omega[i] = 1.0 / (b[i] * w[i]) <= t ? 0.0 : kInf;
    budget = 0.0;
    return;
  }
  for (std::size_t i = 0; i < d; ++i) omega[i] = std::pow(1.0 / (b[i] * w[i]), ps);
  budget = std::pow(t, ps);
}

void dilation_ellipsoid(const Body& body, const AmbientNorm& ambient, std::vector<double>& c, double& exponent) {
  const WeightedLr* lr = body.lr_ball();
  require(lr != nullptr && body.is_smooth(), "dilation ellipsoid needs a smooth l_q body");
  ambient.check_dim(body.dim());
  const double q = lr->r();
  const auto& b = lr->semiaxes();
  const double ps = ambient.is_euclidean() ? 2.0 : ambient.dual_exponent();
  exponent = std::isinf(ps) ? kInf : (q - 1.0) * ps;
  c.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double wi = ambient.is_euclidean() ? 1.0 : ambient.weights()[i];
    c[i] = std::pow(std::pow(b[i], q) * wi, 1.0 / (q - 1.0));
  }
}

std::size_t max_pattern_size(const std::vector<double>& omega, double budget) {
  std::vector<double> sorted = omega;
  std::sort(sorted.begin(), sorted.end());
  double s = 0.0;
  std::size_t k = 0;
  for (double v : sorted) {
    if (!(s + v <= budget)) break;
    s += v;
    ++k;
  }
  return k;
}

double sparsity_net_bound(const std::vector<double>& omega, double budget, double radius, int n) {
  require(n >= 0, "sparsity_net_bound: n must be nonnegative");
  const std::size_t kmax = max_pattern_size(omega, budget);
  if (kmax == 0 || radius == 0.0) return 0.0;
  std::vector<double> finite;
  for (double v : omega)
    if (v <= budget) finite.push_back(v);

  // log |I_k| <= min over theta of theta*budget + log e_k(exp(-theta*omega)).
  std::vector<double> logcount(kmax + 1, kInf);
  std::vector<double> thetas{0.0};
  if (budget > 0.0)
    for (int j = 0; j < 24; ++j) thetas.push_back(std::pow(10.0, -2.0 + 5.0 * j / 23.0) / budget);
  std::vector<double> e(kmax + 1);
  for (double theta : thetas) {
    std::fill(e.begin(), e.end(), -kInf);
    e[0] = 0.0;
    for (double v : finite) {
      const double lv = -theta * v;
      for (std::size_t k = kmax; k >= 1; --k) e[k] = log_add(e[k], e[k - 1] + lv);
    }
    for (std::size_t k = 0; k <= kmax; ++k) logcount[k] = std::min(logcount[k], theta * budget + e[k]);
  }
  logcount[0] = 0.0;

  const double target = std::ldexp(1.0, n) * std::numbers::ln2;
  auto F = [&](double u) {
    double s = -kInf;
    for (std::size_t k = 0; k <= kmax; ++k) s = log_add(s, logcount[k] + static_cast<double>(k) * u);
    return s;
  };
  if (!(F(0.0) < target)) return kInf;
  double lo = 0.0, hi = 1.0;
  while (F(hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) return 0.0;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (F(mid) < target) lo = mid; else hi = mid;
  }
  if (lo == 0.0) return kInf;
  return 2.0 * radius / std::expm1(lo);
}

double analytic_entropy_bound(const SetRef& set, int n) { return compute(set, n).value; }

std::string analytic_bound_model(const SetRef& set, int n) { return compute(set, n).model; }

}  // namespace chainlab
