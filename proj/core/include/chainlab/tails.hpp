#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chainlab/body.hpp"

namespace chainlab {

/// Which set an analytic entropy bound refers to: B itself (no t) or B_t.
struct SetRef {
  const Body* body = nullptr;
  const AmbientNorm* ambient = nullptr;
  std::optional<double> t;
};

/// Valid upper bound on e_n of the referenced set, the minimum of:
/// its ambient radius, the volumetric bound, a coordinate head/tail split
/// (weighted l_r bodies, using the dilation containment for B_t) and, for
/// octahedral B_t, a sparsity-pattern counting net.
double analytic_entropy_bound(const SetRef& set, int n);

/// Name of the bound that attains analytic_entropy_bound.
std::string analytic_bound_model(const SetRef& set, int n);

/// Sparsity-pattern counting net: smallest eps such that
/// sum_k |I_k| (1 + 2R/eps)^k < 2^{2^n}, where |I_k| bounds the number of
/// k-subsets I with sum_{i in I} omega_i <= budget. Returns +inf when no eps works.
double sparsity_net_bound(const std::vector<double>& omega, double budget, double radius, int n);

/// Largest k such that some k-subset fits in the budget.
std::size_t max_pattern_size(const std::vector<double>& omega, double budget);

/// Additive weights and budget describing octahedral B_t: y in B_t iff the
/// support of y satisfies sum omega_i <= budget.
void octahedron_pattern_weights(const Body& body, const AmbientNorm& ambient, double t, std::vector<double>& omega,
                                double& budget);

/// Semiaxes and exponent of the l_r ellipsoid C with B_t contained in t^{1/(q-1)} C
/// for a smooth weighted l_q body B.
void dilation_ellipsoid(const Body& body, const AmbientNorm& ambient, std::vector<double>& c, double& exponent);

}  // namespace chainlab
