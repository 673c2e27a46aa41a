#include "chainlab/body.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "chainlab/lp.hpp"
#include "chainlab/minnorm.hpp"
#include "chainlab/parallel.hpp"
#include "chainlab/rng.hpp"

namespace chainlab {

namespace {

void check_semiaxes(const std::vector<double>& b, const char* what) {
  require(!b.empty(), std::string(what) + ": b must be nonempty");
  require(b.size() <= kMaxDimension, std::string(what) + ": dimension exceeds cap " + std::to_string(kMaxDimension));
  for (std::size_t i = 0; i < b.size(); ++i) {
    require(std::isfinite(b[i]) && b[i] > 0.0, std::string(what) + ": b must be strictly positive");
    if (i > 0) require(b[i] <= b[i - 1], std::string(what) + ": b must be nonincreasing");
  }
}

constexpr std::size_t kChunk = 512;

// Generalized Gaussian with density proportional to exp(-|g|^r).
double gen_gaussian(Rng& rng, double r) {
  if (r == 2.0) return rng.normal() * std::numbers::sqrt2 * 0.5;
  if (r == 1.0) return rng.sign() * rng.exponential();
  return rng.sign() * std::pow(rng.gamma(1.0 / r), 1.0 / r);
}

}  // namespace

Body::Body(BodySpec spec) : spec_(std::move(spec)) {
  if (auto* e = std::get_if<LqEllipsoid>(&spec_)) {
    require(std::isfinite(e->q) && e->q > 1.0, "LqEllipsoid: q must be a finite real > 1");
    check_semiaxes(e->b, "LqEllipsoid");
    kind_ = Kind::LqEllipsoid;
    dim_ = e->b.size();
    lr_.emplace(e->q, e->b);
  } else if (auto* o = std::get_if<Octahedron>(&spec_)) {
    check_semiaxes(o->b, "Octahedron");
    kind_ = Kind::Octahedron;
    dim_ = o->b.size();
    lr_.emplace(1.0, o->b);
    for (std::size_t i = 0; i < dim_; ++i) {
      Point v(dim_, 0.0);
      v[i] = o->b[i];
      vertices_.push_back(std::move(v));
    }
  } else if (auto* ball = std::get_if<EuclideanBall>(&spec_)) {
    require(std::isfinite(ball->radius) && ball->radius > 0.0, "EuclideanBall: radius must be positive");
    require(ball->dim >= 1 && ball->dim <= kMaxDimension, "EuclideanBall: dim must be in [1, 4096]");
    kind_ = Kind::EuclideanBall;
    dim_ = ball->dim;
    lr_.emplace(2.0, std::vector<double>(dim_, ball->radius));
  } else if (auto* poly = std::get_if<AbsConvPolytope>(&spec_)) {
    require(!poly->vertices.empty(), "AbsConvPolytope: vertex list must be nonempty");
    dim_ = poly->vertices.front().size();
    require(dim_ >= 1 && dim_ <= kMaxDimension, "AbsConvPolytope: dimension must be in [1, 4096]");
    bool nonzero = false;
    for (const auto& v : poly->vertices) {
      require_same_dim(v.size(), dim_, "AbsConvPolytope vertices");
      require(all_finite(v), "AbsConvPolytope: vertices must be finite");
      nonzero = nonzero || !is_zero(v);
    }
    require(nonzero, "AbsConvPolytope: at least one vertex must be nonzero");
    kind_ = Kind::AbsConvPolytope;
    vertices_ = poly->vertices;
  } else {
    const auto& s = std::get<PerturbedSimplex>(spec_);
    require(s.d >= 2 && s.d <= kMaxDimension, "PerturbedSimplex: d must be in [2, 4096]");
    require(s.eps > 0.0 && s.eps < 1.0, "PerturbedSimplex: eps must lie in (0, 1)");
    kind_ = Kind::PerturbedSimplex;
    dim_ = s.d;
    const double shift = s.eps / std::sqrt(static_cast<double>(s.d));
    for (std::size_t i = 0; i < dim_; ++i) {
      Point v(dim_, shift);
      v[i] += 1.0;
      vertices_.push_back(std::move(v));
    }
  }
}

std::string Body::kind_name() const {
  switch (kind_) {
    case Kind::LqEllipsoid: return "lq_ellipsoid";
    case Kind::Octahedron: return "octahedron";
    case Kind::EuclideanBall: return "euclidean_ball";
    case Kind::AbsConvPolytope: return "absconv_polytope";
    case Kind::PerturbedSimplex: return "perturbed_simplex";
  }
  return "unknown";
}

const std::vector<Point>& Body::vertices() const {
  if (kind_ == Kind::LqEllipsoid || kind_ == Kind::EuclideanBall)
    throw Unsupported("smooth bodies have no finite vertex set");
  return vertices_;
}

double Body::max_scale() const {
  if (lr_) return *std::max_element(lr_->semiaxes().begin(), lr_->semiaxes().end());
  double m = 0.0;
  for (const auto& v : vertices_) m = std::max(m, norm2(v));
  return m;
}

double Body::simplex_kappa() const {
  const auto& s = std::get<PerturbedSimplex>(spec_);
  const double d = static_cast<double>(s.d);
  return s.eps / (std::sqrt(d) + s.eps * d);
}

Point Body::simplex_vinv(ConstVec x) const {
  const double k = simplex_kappa();
  double sum = 0.0;
  for (double v : x) sum += v;
  Point w(x.begin(), x.end());
  for (double& v : w) v -= k * sum;
  return w;
}

Point Body::simplex_v(ConstVec z) const {
  const auto& s = std::get<PerturbedSimplex>(spec_);
  const double shift = s.eps / std::sqrt(static_cast<double>(s.d));
  double sum = 0.0;
  for (double v : z) sum += v;
  Point w(z.begin(), z.end());
  for (double& v : w) v += shift * sum;
  return w;
}

double Body::polytope_gauge(ConstVec x, Point* certificate) const {
  const std::size_t m = vertices_.size();
  if (is_zero(x)) {
    if (certificate) certificate->assign(dim_, 0.0);
    return 0.0;
  }
  std::vector<double> a(dim_ * 2 * m);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      a[i * 2 * m + j] = vertices_[j][i];
      a[i * 2 * m + m + j] = -vertices_[j][i];
    }
  }
  const std::vector<double> c(2 * m, 1.0);
  const LpResult lp = solve_standard_lp(a, dim_, Point(x.begin(), x.end()), c, 1e-9);
  if (lp.status == LpResult::Status::Infeasible) return kInf;
  if (lp.status != LpResult::Status::Optimal) throw std::runtime_error("polytope gauge: LP did not reach optimality");
  if (certificate) *certificate = lp.dual;
  return lp.value;
}

double Body::gauge(ConstVec x) const {
  require_same_dim(x.size(), dim_, "gauge");
  if (lr_) return lr_->gauge(x);
  if (kind_ == Kind::PerturbedSimplex) {
    const Point w = simplex_vinv(x);
    double s = 0.0;
    for (double v : w) s += std::fabs(v);
    return s;
  }
  return polytope_gauge(x, nullptr);
}

double Body::dual_gauge(ConstVec z) const {
  require_same_dim(z.size(), dim_, "dual_gauge");
  if (lr_) return lr_->support(z);
  if (kind_ == Kind::PerturbedSimplex) {
    const Point w = simplex_v(z);
    double m = 0.0;
    for (double v : w) m = std::max(m, std::fabs(v));
    return m;
  }
  double m = 0.0;
  for (const auto& v : vertices_) m = std::max(m, std::fabs(dot(v, z)));
  return m;
}

Subgradient Body::simplex_subgradient(ConstVec y, const AmbientNorm& ambient) const {
  const Point w = simplex_vinv(y);
  double l1 = 0.0;
  for (double v : w) l1 += std::fabs(v);
  const double zero_tol = 1e-12 * l1;
  std::vector<double> s(dim_, 0.0);
  std::size_t n_free = 0;
  double s0 = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (std::fabs(w[i]) <= zero_tol) {
      ++n_free;
    } else {
      s[i] = sign_or_zero(w[i]);
      s0 += s[i];
    }
  }
  if (n_free > 0) {
    if (!ambient.is_euclidean() && n_free < dim_)
      throw Unsupported("perturbed simplex: minimal subgradient on a lower face needs a Euclidean ambient norm");
    // All free coordinates share one value c (symmetry and convexity);
    // ||V^{-1}s||^2 = |s|^2 - beta (sum s)^2 is a convex quadratic in c.
    const double k = simplex_kappa();
    const double nf = static_cast<double>(n_free);
    const double beta = k * (2.0 - k * static_cast<double>(dim_));
    const double curv = nf - beta * nf * nf;
    double c = 0.0;
    if (n_free == dim_) {
      c = 0.0;
    } else if (curv > 0.0) {
      c = std::clamp(beta * s0 / (1.0 - beta * nf), -1.0, 1.0);
    } else {
      const double fp = nf - beta * (s0 + nf) * (s0 + nf);
      const double fm = nf - beta * (s0 - nf) * (s0 - nf);
      c = fp <= fm ? 1.0 : -1.0;
    }
    for (std::size_t i = 0; i < dim_; ++i)
      if (std::fabs(w[i]) <= zero_tol) s[i] = c;
  }
  Subgradient out;
  out.z = simplex_vinv(s);
  out.dual_norm = ambient.dual_norm(out.z);
  return out;
}

Subgradient Body::polytope_subgradient(ConstVec y, const AmbientNorm& ambient) const {
  if (!ambient.is_euclidean())
    throw Unsupported("absconv polytope: minimal subgradient is implemented for the Euclidean ambient norm only");
  Point z_lp;
  const double g = polytope_gauge(y, &z_lp);
  if (!std::isfinite(g)) throw InvalidArgument("gauge_subgradient: point outside the span of the polytope");
  const double yy = dot(y, y);
  auto to_plane = [&](Point& z) {
    const double f = (g - dot(z, y)) / yy;
    axpy(f, y, z);
  };
  auto violation = [&](const Point& z) {
    double m = 0.0;
    for (const auto& v : vertices_) m = std::max(m, std::fabs(dot(v, z)) - 1.0);
    return m;
  };
  to_plane(z_lp);
  // Dykstra: Euclidean projection of the origin onto plane and slabs.
  const std::size_t m = vertices_.size();
  Point z(dim_, 0.0);
  std::vector<Point> inc(m + 1, Point(dim_, 0.0));
  for (int sweep = 0; sweep < 3000; ++sweep) {
    double move = 0.0;
    for (std::size_t k = 0; k <= m; ++k) {
      Point wv = add(z, inc[k]);
      Point pz = wv;
      if (k == m) {
        to_plane(pz);
      } else {
        const auto& v = vertices_[k];
        const double vv = dot(v, v);
        const double s = dot(v, wv);
        if (vv > 0.0 && std::fabs(s) > 1.0) axpy((sign_or_zero(s) - s) / vv, v, pz);
      }
      for (std::size_t i = 0; i < dim_; ++i) {
        inc[k][i] = wv[i] - pz[i];
        move = std::max(move, std::fabs(pz[i] - z[i]));
      }
      z = std::move(pz);
    }
    if (move < 1e-15 * (1.0 + norm2(z))) break;
  }
  to_plane(z);
  if (violation(z) > 1e-10) {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      Point c = chainlab::scaled(z, 1.0 - mid);
      axpy(mid, z_lp, c);
      if (violation(c) > 1e-10) lo = mid; else hi = mid;
    }
    Point c = chainlab::scaled(z, 1.0 - hi);
    axpy(hi, z_lp, c);
    z = std::move(c);
  }
  if (norm2(z_lp) < norm2(z) && violation(z_lp) <= 1e-10) z = z_lp;
  Subgradient out;
  out.z = std::move(z);
  out.dual_norm = ambient.dual_norm(out.z);
  return out;
}

Subgradient Body::gauge_subgradient(ConstVec y, const AmbientNorm& ambient) const {
  require_same_dim(y.size(), dim_, "gauge_subgradient");
  ambient.check_dim(dim_);
  Subgradient out;
  if (is_smooth()) {
    if (is_zero(y)) throw InvalidArgument("gauge not differentiable at origin");
    out.z = lr_->gradient(y);
  } else if (is_zero(y)) {
    out.z.assign(dim_, 0.0);
  } else if (kind_ == Kind::Octahedron) {
    // Free coordinates (y_i = 0) are set to zero; every weighted l_p dual
    // norm is monotone in |z_i|, so this is the minimal choice.
    out.z = lr_->norming_functional(y);
  } else if (kind_ == Kind::PerturbedSimplex) {
    return simplex_subgradient(y, ambient);
  } else {
    return polytope_subgradient(y, ambient);
  }
  out.dual_norm = ambient.dual_norm(out.z);
  return out;
}

Point Body::project(ConstVec x, double radius) const {
  require_same_dim(x.size(), dim_, "project");
  require(radius >= 0.0, "projection radius must be nonnegative");
  if (lr_) return lr_->project(x, radius);
  if (radius == 0.0) return Point(dim_, 0.0);
  if (gauge(x) <= radius) return Point(x.begin(), x.end());
  std::vector<Point> shifted;
  shifted.reserve(2 * vertices_.size());
  for (const auto& v : vertices_) {
    Point a(dim_), b(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      a[i] = radius * v[i] - x[i];
      b[i] = -radius * v[i] - x[i];
    }
    shifted.push_back(std::move(a));
    shifted.push_back(std::move(b));
  }
  const MinNormResult mn = min_norm_point(shifted);
  return add(mn.point, x);
}

std::vector<Point> Body::sample_cloud(std::size_t count, std::uint64_t seed, SampleMode mode) const {
  require(count >= 1, "sample_cloud: count must be >= 1");
  std::vector<Point> out(count);
  const std::size_t chunks = (count + kChunk - 1) / kChunk;
  parallel_for(chunks, [&](std::size_t c) {
    Rng rng = Rng::substream(seed, c);
    const std::size_t end = std::min(count, (c + 1) * kChunk);
    for (std::size_t k = c * kChunk; k < end; ++k) {
      Point x(dim_);
      if (lr_) {
        const double r = lr_->r();
        const auto& cs = lr_->semiaxes();
        double s = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) {
          const double g = gen_gaussian(rng, r);
          x[i] = g;
          s += r == 2.0 ? g * g : (r == 1.0 ? std::fabs(g) : std::pow(std::fabs(g), r));
        }
        if (mode == SampleMode::Interior) s += rng.exponential();
        const double f = r == 2.0 ? std::sqrt(s) : (r == 1.0 ? s : std::pow(s, 1.0 / r));
        for (std::size_t i = 0; i < dim_; ++i) x[i] = cs[i] * x[i] / f;
      } else {
        const std::size_t m = vertices_.size();
        std::vector<double> lam(m);
        double s = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
          lam[j] = gen_gaussian(rng, 1.0);
          s += std::fabs(lam[j]);
        }
        if (mode == SampleMode::Interior) s += rng.exponential();
        for (std::size_t j = 0; j < m; ++j) axpy(lam[j] / s, vertices_[j], x);
      }
      if (mode == SampleMode::Boundary) {
        const double g = gauge(x);
        if (g > 0.0 && std::isfinite(g)) {
          for (double& v : x) v /= g;
        }
      }
      out[k] = std::move(x);
    }
  });
  return out;
}

Body Body::scaled(double s) const {
  require(std::isfinite(s) && s > 0.0, "scale factor must be positive");
  switch (kind_) {
    case Kind::LqEllipsoid: {
      auto e = std::get<LqEllipsoid>(spec_);
      for (double& v : e.b) v *= s;
      return Body(e);
    }
    case Kind::Octahedron: {
      auto o = std::get<Octahedron>(spec_);
      for (double& v : o.b) v *= s;
      return Body(o);
    }
    case Kind::EuclideanBall: {
      auto b = std::get<EuclideanBall>(spec_);
      b.radius *= s;
      return Body(b);
    }
    default: {
      AbsConvPolytope p;
      for (const auto& v : vertices_) p.vertices.push_back(chainlab::scaled(v, s));
      return Body(p);
    }
  }
}

double ambient_radius(const Body& body, const AmbientNorm& ambient) {
  ambient.check_dim(body.dim());
  if (const WeightedLr* lr = body.lr_ball()) {
    const std::vector<double> ones(body.dim(), 1.0);
    const double p = ambient.is_euclidean() ? 2.0 : ambient.p();
    const std::vector<double>& w = ambient.is_euclidean() ? ones : ambient.weights();
    return lp_radius_of_lr_ball(p, w, lr->r(), lr->semiaxes(), 0, body.dim());
  }
  double m = 0.0;
  for (const auto& v : body.vertices()) m = std::max(m, ambient.norm(v));
  return m;
}

}  // namespace chainlab
