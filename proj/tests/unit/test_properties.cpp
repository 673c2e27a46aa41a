// Randomized invariants over every body kind. Each case draws from a fixed seed.

#include <cmath>
#include <memory>

#include "chainlab/btcloud.hpp"
#include "chainlab/kfun.hpp"
#include "chainlab/serialize.hpp"
#include "doctest.h"
#include "gen.hpp"

using namespace chainlab;

namespace {

std::vector<Body> random_bodies(testgen::Gen& gen, std::size_t d) {
  std::vector<Body> out;
  out.emplace_back(LqEllipsoid{gen.uniform(1.2, 5.0), gen.semiaxes(d, 0.1, 2.0)});
  out.emplace_back(Octahedron{gen.semiaxes(d, 0.1, 2.0)});
  out.emplace_back(EuclideanBall{gen.uniform(0.5, 2.0), d});
  std::vector<Point> verts;
  for (std::size_t k = 0; k < d + 2; ++k) verts.push_back(gen.vec(d, -1.0, 1.0));
  out.emplace_back(AbsConvPolytope{verts});
  if (d >= 2) out.emplace_back(PerturbedSimplex{d, gen.uniform(0.05, 0.9)});
  return out;
}

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("gauge axioms and duality") {
  testgen::Gen gen(101);
  const auto euc = AmbientNorm::euclidean();
  for (int round = 0; round < 4; ++round) {
    const std::size_t d = static_cast<std::size_t>(gen.integer(2, 5));
    for (const Body& body : random_bodies(gen, d)) {
      CAPTURE(body.kind_name());
      for (int k = 0; k < 30; ++k) {
        const Point x = gen.vec(d, -2.0, 2.0);
        const Point y = gen.vec(d, -2.0, 2.0);
        const Point z = gen.vec(d, -2.0, 2.0);
        const double s = gen.log_uniform(0.01, 100.0);
        const double gx = body.gauge(x), gy = body.gauge(y);
        CHECK(body.gauge(scaled(x, -s)) == doctest::Approx(s * gx).epsilon(1e-7));
        CHECK(body.gauge(add(x, y)) <= gx + gy + 1e-7 * (1.0 + gx + gy));
        CHECK(dot(z, x) <= gx * body.dual_gauge(z) + 1e-7 * (1.0 + gx * body.dual_gauge(z)));
        CHECK(body.dual_gauge(scaled(z, s)) == doctest::Approx(s * body.dual_gauge(z)).epsilon(1e-7));
        if (body.kind() != Body::Kind::AbsConvPolytope || std::isfinite(gx)) {
          const auto sg = body.gauge_subgradient(x, euc);
          CHECK(dot(sg.z, x) == doctest::Approx(gx).epsilon(1e-6));
          CHECK(body.dual_gauge(sg.z) <= 1.0 + 1e-6);
          CHECK(sg.dual_norm == doctest::Approx(norm2(sg.z)).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("K is concave, nondecreasing and below both trivial bounds") {
  testgen::Gen gen(202);
  const auto euc = AmbientNorm::euclidean();
  const std::size_t d = 3;
  for (const Body& body : random_bodies(gen, d)) {
    CAPTURE(body.kind_name());
    for (int k = 0; k < 4; ++k) {
      Point x = gen.vec(d, -1.5, 1.5);
      if (!std::isfinite(body.gauge(x))) continue;
      std::vector<double> grid;
      for (int i = 0; i <= 12; ++i) grid.push_back(0.25 * i);
      auto prof = k_profile(body, euc, x, grid, 1e-8);
      const double scale = std::max(1.0, body.gauge(x));
      for (std::size_t i = 0; i < prof.size(); ++i) {
        CHECK(prof[i].value <= body.gauge(x) + 1e-8 * scale);
        CHECK(prof[i].value <= grid[i] * norm2(x) + 1e-8 * scale);
        if (i > 0) CHECK(prof[i].value >= prof[i - 1].value - 1e-8 * scale);
        if (i > 0 && i + 1 < prof.size())
          CHECK(prof[i + 1].value - 2.0 * prof[i].value + prof[i - 1].value <= 1e-6 * scale);
        CHECK(body.gauge(prof[i].minimizer) <= body.gauge(x) + 1e-6 * scale);
      }
    }
  }
}

TEST_CASE("B_t clouds pass the membership test") {
  testgen::Gen gen(303);
  const auto euc = AmbientNorm::euclidean();
  const std::size_t d = 3;
  for (const Body& body : random_bodies(gen, d)) {
    if (body.kind() == Body::Kind::AbsConvPolytope) continue;
    CAPTURE(body.kind_name());
    for (double t : {0.5, 1.5, 4.0}) {
      auto cloud = bt_cloud(body, euc, t, 200, 7);
      CHECK_FALSE(cloud.points.empty());
      bool has_origin = false;
      for (const auto& y : cloud.points) {
        if (is_zero(y)) has_origin = true;
        CHECK(body.gauge(y) <= 1.0 + 1e-9);
        CHECK(bt_member(body, euc, t, y, 1e-7).member);
      }
      CHECK(has_origin);
      CHECK(cloud.points == bt_cloud(body, euc, t, 200, 7).points);
    }
  }
}

TEST_CASE("octahedral B_t is nested in t") {
  testgen::Gen gen(404);
  const auto euc = AmbientNorm::euclidean();
  Body oct(Octahedron{gen.semiaxes(4, 0.2, 1.0)});
  for (int k = 0; k < 200; ++k) {
    Point y = gen.vec(4, -1.0, 1.0);
    for (double& v : y)
      if (gen.uniform() < 0.4) v = 0.0;
    const double g = oct.gauge(y);
    if (g > 1.0) y = scaled(y, 1.0 / g);
    const double t = gen.uniform(0.5, 6.0);
    if (bt_member(oct, euc, t, y).member) CHECK(bt_member(oct, euc, 1.5 * t, y).member);
  }
}

TEST_CASE("body JSON round trip preserves gauges") {
  testgen::Gen gen(505);
  for (const Body& body : random_bodies(gen, 4)) {
    Body back(body_from_json(body_to_json(body.spec())));
    for (int k = 0; k < 10; ++k) {
      const Point x = gen.vec(4, -1.0, 1.0);
      CHECK(back.gauge(x) == body.gauge(x));
    }
  }
}

}  // TEST_SUITE
