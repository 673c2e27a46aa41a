#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "chainlab/norms.hpp"
#include "chainlab/vec.hpp"

namespace chainlab {

/// {x : sum (|x_i| / b_i)^q <= 1}.
struct LqEllipsoid {
  double q = 2.0;
  std::vector<double> b;
};

/// absconv{b_i e_i}.
struct Octahedron {
  std::vector<double> b;
};

/// Euclidean ball of the given radius in R^dim.
struct EuclideanBall {
  double radius = 1.0;
  std::size_t dim = 1;
};

/// absconv of the vertices.
struct AbsConvPolytope {
  std::vector<Point> vertices;
};

/// absconv{e_i + eps u}, u = d^{-1/2} (1, ..., 1).
struct PerturbedSimplex {
  std::size_t d = 2;
  double eps = 0.5;
};

using BodySpec = std::variant<LqEllipsoid, Octahedron, EuclideanBall, AbsConvPolytope, PerturbedSimplex>;

enum class SampleMode { Boundary, Interior };

struct Subgradient {
  Point z;
  /// Ambient dual norm of z.
  double dual_norm = 0.0;
};

/// A validated symmetric convex body in R^d.
class Body {
 public:
  enum class Kind { LqEllipsoid, Octahedron, EuclideanBall, AbsConvPolytope, PerturbedSimplex };

  explicit Body(BodySpec spec);

  const BodySpec& spec() const { return spec_; }
  Kind kind() const { return kind_; }
  std::string kind_name() const;
  std::size_t dim() const { return dim_; }

  double gauge(ConstVec x) const;
  double dual_gauge(ConstVec z) const;
  bool contains(ConstVec x, double tol = 1e-9) const { return gauge(x) <= 1.0 + tol; }

  /// Subgradient of the gauge at y of minimal ambient dual norm.
  Subgradient gauge_subgradient(ConstVec y, const AmbientNorm& ambient) const;

  /// Euclidean projection onto radius * B.
  Point project(ConstVec x, double radius = 1.0) const;

  /// Smooth bodies have a unique gauge gradient away from the origin.
  bool is_smooth() const { return kind_ == Kind::LqEllipsoid || kind_ == Kind::EuclideanBall; }
  /// Non-null for bodies that are weighted l_r balls (ellipsoid, octahedron, ball).
  const WeightedLr* lr_ball() const { return lr_ ? &*lr_ : nullptr; }
  /// Generating vertices (octahedron, polytope, perturbed simplex); B = absconv of them.
  const std::vector<Point>& vertices() const;
  /// Largest semiaxis-type scale: max b_i, the radius, or max vertex norm.
  double max_scale() const;

  /// Deterministic sample of `count` points of B (interior) or of its boundary.
  std::vector<Point> sample_cloud(std::size_t count, std::uint64_t seed, SampleMode mode) const;

  /// s * B as a body of the same variant when possible (polytope otherwise).
  Body scaled(double s) const;

  // Perturbed simplex helpers: V^{-1} x = x - kappa (sum x) 1 and V z = z + (eps/sqrt d)(sum z) 1.
  double simplex_kappa() const;
  Point simplex_vinv(ConstVec x) const;
  Point simplex_v(ConstVec z) const;

 private:
  double polytope_gauge(ConstVec x, Point* certificate) const;
  Subgradient polytope_subgradient(ConstVec y, const AmbientNorm& ambient) const;
  Subgradient simplex_subgradient(ConstVec y, const AmbientNorm& ambient) const;

  BodySpec spec_;
  Kind kind_;
  std::size_t dim_ = 0;
  std::optional<WeightedLr> lr_;
  std::vector<Point> vertices_;
};

/// max over B of the ambient norm (exact).
double ambient_radius(const Body& body, const AmbientNorm& ambient);
inline double ambient_diameter(const Body& body, const AmbientNorm& ambient) { return 2.0 * ambient_radius(body, ambient); }

}  // namespace chainlab
