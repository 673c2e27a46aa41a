#include "chainlab/kfun.hpp"

#include <algorithm>
#include <cmath>

#include "chainlab/parallel.hpp"

namespace chainlab {

namespace {

constexpr double kSlopeTol = 1e-12;

struct Probe {
  double s = 0.0;
  Point proj;
  double dist = 0.0;
  Point residual_dir;  // unit vector along x - proj (empty when dist == 0)
  double slope = 1.0;  // 1 - t h_B(residual_dir)
  double primal = 0.0;
};

Probe probe(const Body& body, double t, ConstVec x, double s) {
  Probe p;
  p.s = s;
  p.proj = body.project(x, s);
  Point r = sub(x, p.proj);
  p.dist = norm2(r);
  if (p.dist > 0.0) {
    for (double& v : r) v /= p.dist;
    p.slope = 1.0 - t * body.dual_gauge(r);
    p.residual_dir = std::move(r);
  }
  p.primal = s + t * p.dist;
  return p;
}

struct Candidate {
  Point z;
  double value = -kInf;
};

// Scales z into {h_B <= 1, ||z||_* <= t} and scores it.
void offer(Candidate& best, const Body& body, const AmbientNorm& ambient, double t, ConstVec x, Point z) {
  if (!all_finite(z)) return;
  const double h = body.dual_gauge(z);
  const double n = ambient.dual_norm(z);
  const double f = std::max({1.0, h, t > 0.0 ? n / t : (n > 0.0 ? kInf : 0.0)});
  if (!std::isfinite(f)) return;
  for (double& v : z) v /= f;
  const double val = dot(z, x);
  if (val > best.value) {
    best.value = val;
    best.z = std::move(z);
  }
}

void add_standard_certificates(Candidate& best, const Body& body, const AmbientNorm& ambient, double t, ConstVec x,
                               double gx) {
  // y = 0: the ambient dual witness of x, scaled by t.
  offer(best, body, ambient, t, x, scaled(ambient.dual_witness(x), t));
  // y = x: a subgradient of the gauge at x.
  if (std::isfinite(gx)) {
    try {
      offer(best, body, ambient, t, x, body.gauge_subgradient(x, ambient).z);
    } catch (const Unsupported&) {
    }
  }
}

KResult finish(const Body& body, const AmbientNorm& ambient, double t, ConstVec x, double tol, double primal,
               Point minimizer, const Candidate& cert, bool nonunique) {
  KResult res;
  res.t = t;
  res.value = primal;
  res.certificate = cert.z;
  res.dual_value = cert.value;
  res.gap = std::max(0.0, primal - cert.value);
  res.nonunique = nonunique;
  const double gx = body.gauge(x);
  if (gx <= 1.0 + tol && primal >= gx - tol * (1.0 + gx)) {
    minimizer.assign(x.begin(), x.end());
    res.value = std::min(primal, gx);
  }
  res.minimizer = std::move(minimizer);
  (void)ambient;
  if (res.gap > tol * (1.0 + std::fabs(res.value))) {
    throw KNonConvergence("k_functional: duality gap " + std::to_string(res.gap) + " above tolerance", res);
  }
  return res;
}

KResult euclidean_k(const Body& body, const AmbientNorm& ambient, double t, ConstVec x, double tol) {
  const double gx = body.gauge(x);
  const double nx = norm2(x);
  const double s_hi = std::isfinite(gx) ? std::min(gx, t * nx) : t * nx;

  // Smallest s with slope >= -eta, and largest s with slope <= eta.
  auto bisect = [&](bool left) {
    Probe lo_p = probe(body, t, x, 0.0);
    if (left && lo_p.slope >= -kSlopeTol) return lo_p;
    Probe hi_p = probe(body, t, x, s_hi);
    if (!left && hi_p.slope <= kSlopeTol) return hi_p;
    if (left && hi_p.slope < -kSlopeTol) return hi_p;
    if (!left && lo_p.slope > kSlopeTol) return lo_p;
    double lo = 0.0, hi = s_hi;
    Probe keep = left ? hi_p : lo_p;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * s_hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      Probe m = probe(body, t, x, mid);
      const bool go_left = left ? (m.slope >= -kSlopeTol) : (m.slope > kSlopeTol);
      if (go_left) {
        hi = mid;
        if (left) keep = std::move(m);
      } else {
        lo = mid;
        if (!left) keep = std::move(m);
      }
    }
    return keep;
  };
  Probe right = bisect(false);
  Probe left = bisect(true);

  Candidate cert;
  for (const Probe* p : {&right, &left})
    if (p->dist > 0.0) offer(cert, body, ambient, t, x, scaled(p->residual_dir, t));
  add_standard_certificates(cert, body, ambient, t, x, gx);

  const Probe* best = right.primal <= left.primal ? &right : &left;
  double primal = best->primal;
  Point minimizer = best->proj;
  if (t * nx < primal) {
    primal = t * nx;
    minimizer.assign(x.size(), 0.0);
  }
  if (std::isfinite(gx) && gx < primal) {
    primal = gx;
    minimizer.assign(x.begin(), x.end());
  }
  const bool nonunique = std::sqrt(sq_dist(left.proj, right.proj)) > 10.0 * tol;
  return finish(body, ambient, t, x, tol, primal, std::move(minimizer), cert, nonunique);
}

// Douglas-Rachford on ||y||_B + t ||x - y|| using Moreau decompositions:
// prox of a norm is the identity minus projection onto the scaled dual ball.
KResult splitting_k(const Body& body, const AmbientNorm& ambient, double t, ConstVec x, double tol) {
  const WeightedLr* lr = body.lr_ball();
  if (lr == nullptr)
    throw Unsupported("k_functional: non-Euclidean ambient norms are supported for l_q ellipsoids, octahedra and balls only");
  const std::size_t d = x.size();
  const WeightedLr polar = lr->polar();
  const WeightedLr dual_ball = ambient.dual_unit_ball(d);
  const double gx = body.gauge(x);
  const double nx = ambient.norm(x);

  Candidate cert;
  add_standard_certificates(cert, body, ambient, t, x, gx);
  double primal = std::min(gx, t * nx);
  Point minimizer = gx <= t * nx ? Point(x.begin(), x.end()) : Point(d, 0.0);
  auto objective = [&](const Point& y) { return body.gauge(y) + t * ambient.distance(x, y); };
  auto converged = [&] { return primal - cert.value <= 0.5 * tol * (1.0 + std::fabs(primal)); };
  if (converged()) return finish(body, ambient, t, x, tol, primal, std::move(minimizer), cert, false);

  const double gamma = std::max(norm2(x), 1e-300) / std::max(norm2(cert.z), 1e-300);
  Point v = scaled(x, 1.0 / std::max(1.0, gx));
  for (int it = 0; it < 100000; ++it) {
    const Point pz = polar.project(v, gamma);
    const Point y = sub(v, pz);
    Point refl(d);
    for (std::size_t i = 0; i < d; ++i) refl[i] = 2.0 * y[i] - v[i];
    const Point w = add(refl, dual_ball.project(sub(x, refl), gamma * t));
    for (std::size_t i = 0; i < d; ++i) v[i] += w[i] - y[i];
    if (it % 5 == 0) {
      for (const Point* cand : {&y, &w}) {
        const double f = objective(*cand);
        if (f < primal) {
          primal = f;
          minimizer = *cand;
        }
      }
      offer(cert, body, ambient, t, x, scaled(pz, 1.0 / gamma));
      if (converged()) break;
    }
  }
  return finish(body, ambient, t, x, tol, primal, std::move(minimizer), cert, false);
}

}  // namespace

KResult k_functional(const Body& body, const AmbientNorm& ambient, double t, ConstVec x, double tol) {
  require(std::isfinite(t) && t >= 0.0, "k_functional: t must be a finite nonnegative real");
  require(tol > 0.0, "k_functional: tol must be positive");
  require_same_dim(x.size(), body.dim(), "k_functional");
  ambient.check_dim(body.dim());
  const std::size_t d = x.size();
  if (t == 0.0 || is_zero(x)) {
    KResult res;
    res.t = t;
    res.minimizer.assign(d, 0.0);
    res.certificate.assign(d, 0.0);
    return res;
  }
  if (ambient.is_euclidean()) return euclidean_k(body, ambient, t, x, tol);
  return splitting_k(body, ambient, t, x, tol);
}

std::vector<KResult> k_profile(const Body& body, const AmbientNorm& ambient, ConstVec x,
                               const std::vector<double>& t_grid, double tol) {
  require(!t_grid.empty(), "k_profile: t grid must be nonempty");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    require(t_grid[i] >= t_grid[i - 1], "k_profile: t grid must be nondecreasing");
  std::vector<KResult> out(t_grid.size());
  parallel_for(t_grid.size(), [&](std::size_t i) { out[i] = k_functional(body, ambient, t_grid[i], x, tol); });
  return out;
}

std::vector<double> displacements(const std::vector<KResult>& profile, ConstVec x, const AmbientNorm& ambient) {
  std::vector<double> out;
  out.reserve(profile.size());
  for (const auto& r : profile) out.push_back(ambient.distance(x, r.minimizer));
  return out;
}

BtMembership bt_member(const Body& body, const AmbientNorm& ambient, double t, ConstVec y, double tol) {
  require(std::isfinite(t) && t >= 0.0, "bt_member: t must be a finite nonnegative real");
  require_same_dim(y.size(), body.dim(), "bt_member");
  const double g = body.gauge(y);
  if (!(g <= 1.0 + tol)) throw InvalidArgument("bt_member: y lies outside B");
  BtMembership out;
  if (is_zero(y)) {
    out.member = true;
    out.certificate.assign(y.size(), 0.0);
    return out;
  }
  if (t >= 1e6 * body.max_scale() / ambient.min_weight()) {
    out.member = true;
    const Subgradient sg = body.gauge_subgradient(y, ambient);
    out.certificate = sg.z;
    out.certificate_norm = sg.dual_norm;
    return out;
  }
  const Subgradient sg = body.gauge_subgradient(y, ambient);
  out.certificate = sg.z;
  out.certificate_norm = sg.dual_norm;
  out.member = sg.dual_norm <= t + tol;
  return out;
}

double simplex_whole_body_threshold(const Body& body) {
  require(body.kind() == Body::Kind::PerturbedSimplex, "threshold defined for the perturbed simplex only");
  // Facet normals V^{-1}s with s in {-1, 1}^d have squared norm d - beta S^2.
  const double d = static_cast<double>(body.dim());
  const double k = body.simplex_kappa();
  const double beta = k * (2.0 - k * d);
  const double smin = static_cast<double>(body.dim() % 2);
  return std::sqrt(d - beta * smin * smin);
}

BtDescription bt_closed_form(const Body& body, double t) {
  require(std::isfinite(t) && t >= 0.0, "bt_closed_form: t must be a finite nonnegative real");
  switch (body.kind()) {
    case Body::Kind::LqEllipsoid:
    case Body::Kind::EuclideanBall: {
      const double q = body.lr_ball()->r();
      EllipsoidDilation e;
      e.t = t;
      e.exponent = 2.0 * q - 2.0;
      e.dilation = std::pow(t, 1.0 / (q - 1.0));
      for (double b : body.lr_ball()->semiaxes()) e.c.push_back(std::pow(b, q / (q - 1.0)));
      return e;
    }
    case Body::Kind::Octahedron: {
      SparsitySet s;
      s.t = t;
      for (double b : body.lr_ball()->semiaxes()) s.weights.push_back(1.0 / (b * b));
      return s;
    }
    case Body::Kind::PerturbedSimplex: {
      const double thr = simplex_whole_body_threshold(body);
      if (t >= thr) return WholeBodyAboveThreshold{t, thr};
      const double eps = std::get<PerturbedSimplex>(body.spec()).eps;
      if (t >= 1.0 / eps) return Superset{t, "conv{x_1, ..., x_d}"};
      return Superset{t, "{0}"};
    }
    default:
      throw Unsupported("bt_closed_form: no closed form for this body");
  }
}

}  // namespace chainlab
