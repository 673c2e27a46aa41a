#include "chainlab/norms.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numeric>

namespace chainlab {

namespace {

// (sum_i (s_i |x_i|)^r)^{1/r} with s_i = scale[i] (or 1/scale[i] if divide),
// computed with max-normalization so that it neither overflows nor underflows.
double weighted_norm(double r, ConstVec x, ConstVec scale, bool divide) {
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double v = divide ? std::fabs(x[i]) / scale[i] : std::fabs(x[i]) * scale[i];
    m = std::max(m, v);
  }
  if (std::isinf(r) || m == 0.0 || !std::isfinite(m)) return m;
  double s = 0.0;
  if (r == 1.0) {
    for (std::size_t i = 0; i < x.size(); ++i) s += divide ? std::fabs(x[i]) / scale[i] : std::fabs(x[i]) * scale[i];
    return s;
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double v = (divide ? std::fabs(x[i]) / scale[i] : std::fabs(x[i]) * scale[i]) / m;
    if (v == 0.0) continue;
    s += r == 2.0 ? v * v : std::pow(v, r);
  }
  return m * (r == 2.0 ? std::sqrt(s) : std::pow(s, 1.0 / r));
}

double norm_of(double e, ConstVec a, std::size_t first, std::size_t last) {
  std::vector<double> ones(last - first, 1.0);
  return weighted_norm(e, a.subspan(first, last - first), ones, false);
}

// Solve v + lambda v^{r-1} = alpha for v in [0, alpha].
double shrink_root(double r, double lambda, double alpha) {
  if (alpha <= 0.0) return 0.0;
  if (lambda == 0.0) return alpha;
  if (r == 2.0) return alpha / (1.0 + lambda);
  auto f = [&](double v) { return v + lambda * std::pow(v, r - 1.0) - alpha; };
  std::uintmax_t iters = 200;
  const auto [lo, hi] = boost::math::tools::toms748_solve(f, 0.0, alpha, -alpha, f(alpha),
                                                          boost::math::tools::eps_tolerance<double>(52), iters);
  return 0.5 * (lo + hi);
}

}  // namespace

double conjugate_exponent(double r) {
  require(r >= 1.0, "exponent must be >= 1");
  if (r == 1.0) return kInf;
  if (std::isinf(r)) return 1.0;
  return r / (r - 1.0);
}

WeightedLr::WeightedLr(double r, std::vector<double> semiaxes) : r_(r), c_(std::move(semiaxes)) {
  require(r_ >= 1.0, "l_r exponent must be >= 1");
  require(!c_.empty(), "l_r ball needs at least one coordinate");
  for (double v : c_) require(std::isfinite(v) && v > 0.0, "l_r semiaxes must be positive and finite");
  uniform_ = std::all_of(c_.begin(), c_.end(), [&](double v) { return v == c_.front(); });
}

double WeightedLr::gauge(ConstVec x) const {
  require_same_dim(x.size(), c_.size(), "gauge");
  return weighted_norm(r_, x, c_, true);
}

double WeightedLr::support(ConstVec z) const {
  require_same_dim(z.size(), c_.size(), "support");
  return weighted_norm(conjugate_exponent(r_), z, c_, false);
}

WeightedLr WeightedLr::polar() const {
  std::vector<double> inv(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) inv[i] = 1.0 / c_[i];
  return WeightedLr(conjugate_exponent(r_), std::move(inv));
}

Point WeightedLr::gradient(ConstVec x) const {
  require(r_ > 1.0 && std::isfinite(r_), "gradient requires 1 < r < inf");
  const double g = gauge(x);
  if (g == 0.0) throw InvalidArgument("gauge not differentiable at origin");
  Point z(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) continue;
    const double y = std::fabs(x[i]) / c_[i] / g;
    const double mag = (r_ == 2.0 ? y : std::pow(y, r_ - 1.0)) / c_[i];
    z[i] = x[i] < 0.0 ? -mag : mag;
  }
  return z;
}

Point WeightedLr::norming_functional(ConstVec x) const {
  require_same_dim(x.size(), c_.size(), "norming_functional");
  Point z(x.size(), 0.0);
  if (is_zero(x)) return z;
  if (r_ == 1.0) {
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] != 0.0) z[i] = sign_or_zero(x[i]) / c_[i];
    return z;
  }
  if (std::isinf(r_)) {
    std::size_t best = 0;
    double bv = -1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double v = std::fabs(x[i]) / c_[i];
      if (v > bv) {
        bv = v;
        best = i;
      }
    }
    z[best] = sign_or_one(x[best]) / c_[best];
    return z;
  }
  return gradient(x);
}

Point WeightedLr::project(ConstVec x, double radius) const {
  require_same_dim(x.size(), c_.size(), "project");
  require(radius >= 0.0, "projection radius must be nonnegative");
  const std::size_t d = x.size();
  if (radius == 0.0) return Point(d, 0.0);
  const double g = gauge(x);
  if (g <= radius) return Point(x.begin(), x.end());

  Point y(d, 0.0);
  if (std::isinf(r_)) {
    for (std::size_t i = 0; i < d; ++i) y[i] = std::clamp(x[i], -radius * c_[i], radius * c_[i]);
    return y;
  }
  if (r_ == 2.0 && uniform_) return scaled(x, radius / g);

  std::vector<double> C(d), a(d);
  for (std::size_t i = 0; i < d; ++i) {
    C[i] = radius * c_[i];
    a[i] = std::fabs(x[i]);
  }

  if (r_ == 1.0) {
    // u_i = max(a_i - lambda / C_i, 0) with sum u_i / C_i = 1.
    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
      const double bi = a[i] * C[i], bj = a[j] * C[j];
      return bi != bj ? bi > bj : i < j;
    });
    double num = 0.0, den = 0.0, lambda = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      const std::size_t i = order[k];
      const double n2 = num + a[i] / C[i];
      const double d2 = den + 1.0 / (C[i] * C[i]);
      const double cand = (n2 - 1.0) / d2;
      if (cand >= a[i] * C[i]) break;
      num = n2;
      den = d2;
      lambda = cand;
    }
    for (std::size_t i = 0; i < d; ++i) {
      const double u = std::max(a[i] - lambda / C[i], 0.0);
      y[i] = x[i] < 0.0 ? -u : u;
    }
  } else {
    // Coordinatewise v_i = u_i / C_i solves v + (nu / C_i^2) v^{r-1} = a_i / C_i;
    // nu is the root of sum v_i^r = 1.
    auto values = [&](double nu, std::vector<double>& v) {
      for (std::size_t i = 0; i < d; ++i) v[i] = shrink_root(r_, nu / (C[i] * C[i]), a[i] / C[i]);
    };
    std::vector<double> v(d);
    auto phi = [&](double nu) {
      values(nu, v);
      double s = 0.0;
      for (double vi : v) s += std::pow(vi, r_);
      return s - 1.0;
    };
    double hi = 1.0;
    double fhi = phi(hi);
    while (fhi > 0.0) {
      hi *= 4.0;
      fhi = phi(hi);
    }
    const double f0 = std::pow(g / radius, r_) - 1.0;
    std::uintmax_t iters = 200;
    const auto [lo, up] = boost::math::tools::toms748_solve(phi, 0.0, hi, f0, fhi,
                                                            boost::math::tools::eps_tolerance<double>(50), iters);
    values(0.5 * (lo + up), v);
    for (std::size_t i = 0; i < d; ++i) y[i] = (x[i] < 0.0 ? -1.0 : 1.0) * v[i] * C[i];
  }
  const double gy = gauge(y);
  if (gy > radius) {
    const double f = radius / gy;
    for (double& yi : y) yi *= f;
  }
  return y;
}

double WeightedLr::euclidean_radius(std::size_t first, std::size_t last) const {
  std::vector<double> ones(c_.size(), 1.0);
  return lp_radius_of_lr_ball(2.0, ones, r_, c_, first, last);
}

double lp_radius_of_lr_ball(double p, ConstVec w, double r, ConstVec c, std::size_t first, std::size_t last) {
  require(first <= last && last <= c.size() && w.size() == c.size(), "lp_radius_of_lr_ball: bad range");
  if (first == last) return 0.0;
  std::vector<double> a(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) a[i] = w[i] * c[i];
  if (p >= r) return *std::max_element(a.begin() + static_cast<std::ptrdiff_t>(first), a.begin() + static_cast<std::ptrdiff_t>(last));
  if (std::isinf(r)) return norm_of(p, a, first, last);
  return norm_of(p * r / (r - p), a, first, last);
}

AmbientNorm AmbientNorm::euclidean() { return AmbientNorm(); }

AmbientNorm AmbientNorm::weighted_lp(double p, std::vector<double> w) {
  require(p >= 1.0, "ambient exponent must be in [1, inf]");
  require(!w.empty(), "ambient weights must be nonempty");
  for (double v : w) require(std::isfinite(v) && v > 0.0, "ambient weights must be positive and finite");
  require(w.size() <= kMaxDimension, "dimension exceeds cap");
  AmbientNorm n;
  n.euclidean_ = false;
  n.p_ = p;
  n.inv_w_.resize(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) n.inv_w_[i] = 1.0 / w[i];
  n.w_ = std::move(w);
  return n;
}

void AmbientNorm::check_dim(std::size_t dim) const {
  if (!euclidean_) require_same_dim(dim, w_.size(), "ambient norm");
}

double AmbientNorm::norm(ConstVec x) const {
  if (euclidean_) return norm2(x);
  check_dim(x.size());
  return weighted_norm(p_, x, w_, false);
}

double AmbientNorm::dual_norm(ConstVec z) const {
  if (euclidean_) return norm2(z);
  check_dim(z.size());
  return weighted_norm(dual_exponent(), z, w_, true);
}

double AmbientNorm::distance(ConstVec x, ConstVec y) const {
  require_same_dim(x.size(), y.size(), "distance");
  if (euclidean_) return std::sqrt(sq_dist(x, y));
  return norm(sub(x, y));
}

AmbientNorm AmbientNorm::dual() const {
  if (euclidean_) return *this;
  return weighted_lp(dual_exponent(), inv_w_);
}

Point AmbientNorm::dual_witness(ConstVec x) const {
  if (euclidean_) {
    const double n = norm2(x);
    require(n > 0.0, "dual witness of the zero vector");
    return scaled(x, 1.0 / n);
  }
  require(!is_zero(x), "dual witness of the zero vector");
  return unit_ball(x.size()).norming_functional(x);
}

WeightedLr AmbientNorm::unit_ball(std::size_t dim) const {
  if (euclidean_) return WeightedLr(2.0, std::vector<double>(dim, 1.0));
  check_dim(dim);
  return WeightedLr(p_, inv_w_);
}

WeightedLr AmbientNorm::dual_unit_ball(std::size_t dim) const {
  if (euclidean_) return WeightedLr(2.0, std::vector<double>(dim, 1.0));
  check_dim(dim);
  return WeightedLr(dual_exponent(), w_);
}

double AmbientNorm::min_weight() const {
  if (euclidean_) return 1.0;
  return *std::min_element(w_.begin(), w_.end());
}

}  // namespace chainlab
