#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chainlab/body.hpp"

namespace chainlab {

/// A sampled stand-in for B_t. Always contains the origin.
struct SetCloud {
  std::vector<Point> points;
  /// "whole-body", "trivial", "sparsity-patterns", "face-types", "rejection" or "rejection+walk".
  std::string method;
  bool whole_body = false;
  bool trivial = false;
};

/// Cloud for B itself: boundary and interior samples, the generating
/// vertices (or semiaxis endpoints) and the origin.
std::vector<Point> body_cloud(const Body& body, std::size_t count, std::uint64_t seed);

/// Fresh B samples (no anchors) used to measure cloud resolution.
std::vector<Point> body_fresh(const Body& body, std::size_t count, std::uint64_t seed);

/// Cloud for B_t; every point passes bt_member.
SetCloud bt_cloud(const Body& body, const AmbientNorm& ambient, double t, std::size_t count, std::uint64_t seed);

/// True when B_t = B is known analytically.
bool bt_whole_body(const Body& body, const AmbientNorm& ambient, double t);
/// True when B_t = {0} is known analytically.
bool bt_trivial(const Body& body, const AmbientNorm& ambient, double t);

/// Minimal subgradient norm on the relative interior of a face of the
/// perturbed simplex with k_plus positive and k_minus negative coordinates of V^{-1}y.
double simplex_face_norm(const Body& body, std::size_t k_plus, std::size_t k_minus);

}  // namespace chainlab
