#include "chainlab/btcloud.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "chainlab/kfun.hpp"
#include "chainlab/rng.hpp"
#include "chainlab/tails.hpp"

namespace chainlab {

namespace {

constexpr double kBoundaryShare = 0.75;
constexpr double kMemberTol = 1e-9;

// Extremes of the minimal gradient dual norm over the boundary of a smooth
// weighted l_q body: with v_i = (|y_i|/b_i)^q on the simplex, the norm is
// (sum beta_i v_i^alpha)^{1/p*}.
void smooth_gradient_range(const Body& body, const AmbientNorm& ambient, double& lo, double& hi) {
  const WeightedLr& lr = *body.lr_ball();
  const double q = lr.r();
  const auto& b = lr.semiaxes();
  const std::size_t d = b.size();
  const double ps = ambient.is_euclidean() ? 2.0 : ambient.dual_exponent();
  std::vector<double> bw(d);
  for (std::size_t i = 0; i < d; ++i) bw[i] = b[i] * (ambient.is_euclidean() ? 1.0 : ambient.weights()[i]);
  if (std::isinf(ps)) {
    double mx = 0.0;
    for (double v : bw) mx = std::max(mx, 1.0 / v);
    hi = mx;
    lo = 0.0;
    return;
  }
  std::vector<double> beta(d);
  for (std::size_t i = 0; i < d; ++i) beta[i] = std::pow(bw[i], -ps);
  const double alpha = ps * (q - 1.0) / q;
  const double bmax = *std::max_element(beta.begin(), beta.end());
  const double bmin = *std::min_element(beta.begin(), beta.end());
  double top = 0.0, bottom = 0.0;
  if (alpha >= 1.0) {
    top = bmax;
    if (alpha == 1.0) {
      bottom = bmin;
    } else {
      double s = 0.0;
      for (double v : beta) s += std::pow(v, -1.0 / (alpha - 1.0));
      bottom = std::pow(s, -(alpha - 1.0));
    }
  } else {
    double s = 0.0;
    for (double v : beta) s += std::pow(v, 1.0 / (1.0 - alpha));
    top = std::pow(s, 1.0 - alpha);
    bottom = bmin;
  }
  hi = std::pow(top, 1.0 / ps);
  lo = std::pow(bottom, 1.0 / ps);
}

double short_circuit(const Body& body, const AmbientNorm& ambient) {
  return 1e6 * body.max_scale() / ambient.min_weight();
}

// Uniform point of the l1 sphere (boundary) or ball (interior) in R^k, as magnitudes.
std::vector<double> l1_magnitudes(Rng& rng, std::size_t k, bool boundary) {
  std::vector<double> m(k);
  double s = 0.0;
  for (auto& v : m) {
    v = rng.exponential();
    s += v;
  }
  if (!boundary) s += rng.exponential();
  for (auto& v : m) v /= s;
  return m;
}

std::vector<std::size_t> permutation(Rng& rng, std::size_t d) {
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = d; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  return perm;
}

std::vector<Point> anchors(const Body& body) {
  std::vector<Point> out;
  const std::size_t d = body.dim();
  if (const WeightedLr* lr = body.lr_ball()) {
    for (std::size_t i = 0; i < d; ++i) {
      Point v(d, 0.0);
      v[i] = lr->semiaxes()[i];
      out.push_back(v);
      v[i] = -v[i];
      out.push_back(std::move(v));
    }
  } else {
    for (const auto& v : body.vertices()) {
      out.push_back(v);
      out.push_back(scaled(v, -1.0));
    }
  }
  return out;
}

SetCloud octahedron_cloud(const Body& body, const AmbientNorm& ambient, double t, std::size_t count,
                          std::uint64_t seed) {
  SetCloud out;
  out.method = "sparsity-patterns";
  out.points.push_back(Point(body.dim(), 0.0));
  std::vector<double> omega;
  double budget = 0.0;
  octahedron_pattern_weights(body, ambient, t, omega, budget);
  const std::size_t kmax = max_pattern_size(omega, budget);
  const auto& b = body.lr_ball()->semiaxes();
  const std::size_t d = body.dim();
  for (std::size_t i = 0; i < d; ++i) {
    if (omega[i] > budget) continue;
    Point v(d, 0.0);
    v[i] = b[i];
    out.points.push_back(v);
    v[i] = -b[i];
    out.points.push_back(std::move(v));
  }
  Rng rng(mix_seed(seed, 0x0c7a));
  while (out.points.size() < count) {
    const std::size_t k = 1 + rng.below(kmax);
    const auto perm = permutation(rng, d);
    std::vector<std::size_t> pattern;
    double used = 0.0;
    for (std::size_t i : perm) {
      if (pattern.size() == k) break;
      if (used + omega[i] <= budget) {
        pattern.push_back(i);
        used += omega[i];
      }
    }
    const bool boundary = rng.uniform() < kBoundaryShare;
    const auto mag = l1_magnitudes(rng, pattern.size(), boundary);
    Point y(d, 0.0);
    for (std::size_t j = 0; j < pattern.size(); ++j) y[pattern[j]] = rng.sign() * b[pattern[j]] * mag[j];
    out.points.push_back(std::move(y));
  }
  return out;
}

SetCloud simplex_cloud(const Body& body, double t, std::size_t count, std::uint64_t seed) {
  SetCloud out;
  out.method = "face-types";
  const std::size_t d = body.dim();
  out.points.push_back(Point(d, 0.0));
  std::vector<std::pair<std::size_t, std::size_t>> types;
  for (std::size_t kp = 0; kp <= d; ++kp)
    for (std::size_t km = 0; kp + km <= d; ++km)
      if (kp + km >= 1 && simplex_face_norm(body, kp, km) <= t + kMemberTol) types.emplace_back(kp, km);
  if (types.empty()) {
    out.trivial = true;
    out.method = "trivial";
    return out;
  }
  Rng rng(mix_seed(seed, 0x51a9));
  while (out.points.size() < count) {
    const auto [kp, km] = types[rng.below(types.size())];
    const auto perm = permutation(rng, d);
    const bool boundary = rng.uniform() < kBoundaryShare;
    const auto mag = l1_magnitudes(rng, kp + km, boundary);
    Point w(d, 0.0);
    for (std::size_t j = 0; j < kp + km; ++j) w[perm[j]] = (j < kp ? 1.0 : -1.0) * mag[j];
    out.points.push_back(body.simplex_v(w));
  }
  return out;
}

bool member(const Body& body, const AmbientNorm& ambient, double t, ConstVec y) {
  try {
    return bt_member(body, ambient, t, y, kMemberTol).member;
  } catch (const InvalidArgument&) {
    return false;
  }
}

SetCloud generic_cloud(const Body& body, const AmbientNorm& ambient, double t, std::size_t count, std::uint64_t seed) {
  SetCloud out;
  out.method = "rejection";
  const std::size_t d = body.dim();
  const bool cheap = body.lr_ball() != nullptr;
  const std::size_t want = count > 1 ? count - 1 : 0;
  std::vector<Point> dirs;
  const std::size_t batch = 2048;
  const std::size_t max_draws = cheap ? 16 * std::max<std::size_t>(count, 256) : 4 * std::max<std::size_t>(count, 64);
  for (std::size_t drawn = 0, round = 0; drawn < max_draws && dirs.size() < want; drawn += batch, ++round) {
    const auto pts = body.sample_cloud(batch, mix_seed(seed, 0xb7 + round), SampleMode::Boundary);
    for (const auto& p : pts) {
      if (dirs.size() >= want) break;
      if (member(body, ambient, t, p)) dirs.push_back(p);
    }
  }
  if (dirs.size() < want) {
    std::vector<Point> starts = dirs;
    if (starts.empty()) {
      for (const auto& a : anchors(body))
        if (member(body, ambient, t, a)) starts.push_back(a);
    }
    if (!starts.empty()) {
      out.method = dirs.empty() ? "walk" : "rejection+walk";
      Rng rng(mix_seed(seed, 0x3a1c));
      std::vector<double> scale(d, 1.0);
      if (const WeightedLr* lr = body.lr_ball()) scale = lr->semiaxes();
      else {
        const double s = body.max_scale();
        std::fill(scale.begin(), scale.end(), s / std::sqrt(static_cast<double>(d)));
      }
      const std::size_t chains = std::min<std::size_t>(16, starts.size());
      std::vector<Point> state(starts.begin(), starts.begin() + static_cast<std::ptrdiff_t>(chains));
      std::vector<double> sigma(chains, 0.3);
      std::vector<int> accepted(chains, 0);
      const int thin = 3;
      for (std::size_t step = 0; dirs.size() < want && step < 400 * want; ++step) {
        const std::size_t c = step % chains;
        Point prop = state[c];
        for (std::size_t i = 0; i < d; ++i) prop[i] += sigma[c] * scale[i] * rng.normal();
        const double g = body.gauge(prop);
        if (g > 0.0 && std::isfinite(g)) {
          for (double& v : prop) v /= g;
          if (member(body, ambient, t, prop)) {
            state[c] = std::move(prop);
            ++accepted[c];
          }
        }
        const std::size_t round = step / chains;
        if (c == chains - 1 && round % 50 == 49) {
          for (std::size_t k = 0; k < chains; ++k) {
            const double rate = accepted[k] / 50.0;
            if (rate > 0.4) sigma[k] *= 1.5;
            if (rate < 0.2) sigma[k] /= 1.5;
            accepted[k] = 0;
          }
        }
        if (round % thin == thin - 1) dirs.push_back(state[c]);
      }
    }
  }
  out.points.push_back(Point(d, 0.0));
  if (dirs.empty()) {
    out.trivial = true;
    out.method = "trivial";
    return out;
  }
  Rng rr(mix_seed(seed, 0x7ad1));
  for (auto& u : dirs) {
    const double radius = rr.uniform() < kBoundaryShare ? 1.0 : std::pow(rr.uniform(), 1.0 / static_cast<double>(d));
    for (double& v : u) v *= radius;
    out.points.push_back(std::move(u));
  }
  return out;
}

}  // namespace

double simplex_face_norm(const Body& body, std::size_t k_plus, std::size_t k_minus) {
  require(body.kind() == Body::Kind::PerturbedSimplex, "simplex_face_norm: perturbed simplex only");
  const std::size_t d = body.dim();
  require(k_plus + k_minus <= d, "simplex_face_norm: too many coordinates");
  const double k = body.simplex_kappa();
  const double beta = k * (2.0 - k * static_cast<double>(d));
  const double nfix = static_cast<double>(k_plus + k_minus);
  const double s0 = static_cast<double>(k_plus) - static_cast<double>(k_minus);
  const double nf = static_cast<double>(d) - nfix;
  auto phi = [&](double c) { return nfix + nf * c * c - beta * (s0 + nf * c) * (s0 + nf * c); };
  if (nf == 0.0) return std::sqrt(std::max(0.0, phi(0.0)));
  if (nfix == 0.0) return 0.0;
  const double curv = nf - beta * nf * nf;
  double best = std::min(phi(1.0), phi(-1.0));
  if (curv > 0.0) best = std::min(best, phi(std::clamp(beta * s0 / (1.0 - beta * nf), -1.0, 1.0)));
  return std::sqrt(std::max(0.0, best));
}

bool bt_whole_body(const Body& body, const AmbientNorm& ambient, double t) {
  ambient.check_dim(body.dim());
  if (t >= short_circuit(body, ambient)) return true;
  switch (body.kind()) {
    case Body::Kind::LqEllipsoid:
    case Body::Kind::EuclideanBall: {
      double lo = 0.0, hi = 0.0;
      smooth_gradient_range(body, ambient, lo, hi);
      // Same acceptance rule as bt_member.
      return hi * (1.0 + 1e-12) <= t + kMemberTol;
    }
    case Body::Kind::Octahedron: {
      std::vector<double> omega;
      double budget = 0.0;
      octahedron_pattern_weights(body, ambient, t, omega, budget);
      double s = 0.0;
      for (double v : omega) s += v;
      return s <= budget;
    }
    case Body::Kind::PerturbedSimplex:
      return ambient.is_euclidean() && t >= simplex_whole_body_threshold(body);
    default:
      return false;
  }
}

bool bt_trivial(const Body& body, const AmbientNorm& ambient, double t) {
  ambient.check_dim(body.dim());
  if (t >= short_circuit(body, ambient)) return false;
  switch (body.kind()) {
    case Body::Kind::LqEllipsoid:
    case Body::Kind::EuclideanBall: {
      double lo = 0.0, hi = 0.0;
      smooth_gradient_range(body, ambient, lo, hi);
      return lo * (1.0 - 1e-12) > t + kMemberTol;
    }
    case Body::Kind::Octahedron: {
      std::vector<double> omega;
      double budget = 0.0;
      octahedron_pattern_weights(body, ambient, t, omega, budget);
      return max_pattern_size(omega, budget) == 0;
    }
    default:
      return t == 0.0;
  }
}

std::vector<Point> body_cloud(const Body& body, std::size_t count, std::uint64_t seed) {
  require(count >= 1, "body_cloud: count must be >= 1");
  const std::size_t nb = static_cast<std::size_t>(kBoundaryShare * static_cast<double>(count));
  std::vector<Point> out;
  out.push_back(Point(body.dim(), 0.0));
  for (auto& a : anchors(body)) out.push_back(std::move(a));
  if (nb > 0)
    for (auto& p : body.sample_cloud(nb, mix_seed(seed, 1), SampleMode::Boundary)) out.push_back(std::move(p));
  if (count > nb)
    for (auto& p : body.sample_cloud(count - nb, mix_seed(seed, 2), SampleMode::Interior)) out.push_back(std::move(p));
  return out;
}

std::vector<Point> body_fresh(const Body& body, std::size_t count, std::uint64_t seed) {
  const std::size_t nb = static_cast<std::size_t>(kBoundaryShare * static_cast<double>(count));
  std::vector<Point> out;
  if (nb > 0) out = body.sample_cloud(nb, mix_seed(seed, 3), SampleMode::Boundary);
  if (count > nb)
    for (auto& p : body.sample_cloud(count - nb, mix_seed(seed, 4), SampleMode::Interior)) out.push_back(std::move(p));
  return out;
}

SetCloud bt_cloud(const Body& body, const AmbientNorm& ambient, double t, std::size_t count, std::uint64_t seed) {
  require(std::isfinite(t) && t >= 0.0, "bt_cloud: t must be a finite nonnegative real");
  require(count >= 1, "bt_cloud: count must be >= 1");
  ambient.check_dim(body.dim());
  if (bt_trivial(body, ambient, t)) {
    SetCloud out;
    out.points.push_back(Point(body.dim(), 0.0));
    out.trivial = true;
    out.method = "trivial";
    return out;
  }
  if (bt_whole_body(body, ambient, t)) {
    SetCloud out;
    out.points = body_cloud(body, count, seed);
    out.whole_body = true;
    out.method = "whole-body";
    return out;
  }
  if (body.kind() == Body::Kind::Octahedron) return octahedron_cloud(body, ambient, t, count, seed);
  if (body.kind() == Body::Kind::PerturbedSimplex && ambient.is_euclidean()) return simplex_cloud(body, t, count, seed);
  return generic_cloud(body, ambient, t, count, seed);
}

}  // namespace chainlab
