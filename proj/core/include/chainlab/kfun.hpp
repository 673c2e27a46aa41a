#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "chainlab/body.hpp"

namespace chainlab {

/// Value, minimizer and dual certificate of K(t, x) = inf_y ||y||_B + t ||x - y||.
struct KResult {
  double t = 0.0;
  double value = 0.0;
  /// A minimizer pi_t(x).
  Point minimizer;
  /// z with ||z||*_B <= 1 and ||z||_* <= t; <z, x> is a lower bound on K.
  Point certificate;
  double dual_value = 0.0;
  /// value - dual_value.
  double gap = 0.0;
  /// Set when two minimizers further apart than 10 tol were found.
  bool nonunique = false;
};

/// Raised when the solver exhausts its budget; carries the best pair found.
class KNonConvergence : public std::runtime_error {
 public:
  KNonConvergence(const std::string& what, KResult best) : std::runtime_error(what), best_(std::move(best)) {}
  const KResult& best() const { return best_; }

 private:
  KResult best_;
};

KResult k_functional(const Body& body, const AmbientNorm& ambient, double t, ConstVec x, double tol = 1e-6);

/// K at every grid point (grid must be nondecreasing), in grid order.
std::vector<KResult> k_profile(const Body& body, const AmbientNorm& ambient, ConstVec x,
                               const std::vector<double>& t_grid, double tol = 1e-6);

/// d(x, pi_t(x)) for each profile entry.
std::vector<double> displacements(const std::vector<KResult>& profile, ConstVec x, const AmbientNorm& ambient);

struct BtMembership {
  bool member = false;
  /// Minimal-dual-norm subgradient used for the decision (zero at y = 0).
  Point certificate;
  double certificate_norm = 0.0;
};

/// Decides y in B_t = {y in B : some z in the subdifferential of the gauge at y has ||z||_* <= t}.
BtMembership bt_member(const Body& body, const AmbientNorm& ambient, double t, ConstVec y, double tol = 1e-9);

/// B_t is contained in B intersected with dilation * C, where C is the l_exponent ellipsoid with semiaxes c.
struct EllipsoidDilation {
  double t = 0.0;
  std::vector<double> c;
  double exponent = 2.0;
  double dilation = 0.0;
};

/// Exact: y in B_t iff sum over the support of y of weights_i <= t^2.
struct SparsitySet {
  double t = 0.0;
  std::vector<double> weights;
};

/// B_t = B whenever t >= threshold.
struct WholeBodyAboveThreshold {
  double t = 0.0;
  double threshold = 0.0;
};

/// B_t contains the described set.
struct Superset {
  double t = 0.0;
  std::string description;
};

using BtDescription = std::variant<EllipsoidDilation, SparsitySet, WholeBodyAboveThreshold, Superset>;

/// Closed-form description of B_t (Euclidean ambient).
BtDescription bt_closed_form(const Body& body, double t);

/// Largest minimal subgradient norm over the perturbed simplex; B_t = B above it.
double simplex_whole_body_threshold(const Body& body);

}  // namespace chainlab
