#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "chainlab/vec.hpp"

namespace chainlab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Hoelder conjugate: 1/r + 1/r* = 1 (1 <-> inf).
double conjugate_exponent(double r);

/// Weighted l_r ball {x : sum_i (|x_i| / c_i)^r <= 1} for r in [1, inf].
///
/// This one primitive backs the l_q-ellipsoids, octahedra and Euclidean balls
/// as well as every weighted l_p ambient norm and all of their polars.
class WeightedLr {
 public:
  WeightedLr(double r, std::vector<double> semiaxes);

  double r() const { return r_; }
  const std::vector<double>& semiaxes() const { return c_; }
  std::size_t dim() const { return c_.size(); }

  double gauge(ConstVec x) const;
  /// sup over the ball of <z, x>.
  double support(ConstVec z) const;
  /// Unit ball of support(): exponent r*, semiaxes 1/c.
  WeightedLr polar() const;

  /// Gradient of the gauge; requires 1 < r < inf and x != 0.
  Point gradient(ConstVec x) const;
  /// A z with <z, x> = gauge(x) and support(z) <= 1; coordinates that are
  /// free in the subdifferential are set to zero.
  Point norming_functional(ConstVec x) const;

  /// Euclidean projection of x onto radius * ball.
  Point project(ConstVec x, double radius = 1.0) const;

  /// max ||x_S||_2 over the ball, S = coordinates [first, last).
  double euclidean_radius(std::size_t first, std::size_t last) const;

 private:
  double r_;
  std::vector<double> c_;
  bool uniform_ = false;
};

/// max over the weighted l_r ball (semiaxes c, exponent r) of the weighted
/// l_p norm (sum (w_i |x_i|)^p)^{1/p}, restricted to coordinates [first, last).
double lp_radius_of_lr_ball(double p, ConstVec w, double r, ConstVec c, std::size_t first, std::size_t last);

/// Norm on the ambient space used for all distances.
///
/// Either the Euclidean norm or a coordinate-weighted l_p norm
/// ||x|| = (sum (w_i |x_i|)^p)^{1/p}, whose dual is weighted l_{p*} with
/// weights 1/w. Both have unconditional constant 1 in the standard basis.
class AmbientNorm {
 public:
  static AmbientNorm euclidean();
  static AmbientNorm weighted_lp(double p, std::vector<double> w);

  bool is_euclidean() const { return euclidean_; }
  double p() const { return p_; }
  double dual_exponent() const { return conjugate_exponent(p_); }
  const std::vector<double>& weights() const { return w_; }

  double norm(ConstVec x) const;
  double dual_norm(ConstVec z) const;
  double distance(ConstVec x, ConstVec y) const;

  AmbientNorm dual() const;
  /// z with <z, x> = ||x|| and ||z||* = 1 (x != 0).
  Point dual_witness(ConstVec x) const;
  /// Unit ball as a weighted l_r ball in dimension `dim`.
  WeightedLr unit_ball(std::size_t dim) const;
  WeightedLr dual_unit_ball(std::size_t dim) const;
  /// Smallest weight (1 for Euclidean).
  double min_weight() const;

  void check_dim(std::size_t dim) const;

 private:
  AmbientNorm() = default;
  bool euclidean_ = true;
  double p_ = 2.0;
  std::vector<double> w_;
  std::vector<double> inv_w_;
};

}  // namespace chainlab
