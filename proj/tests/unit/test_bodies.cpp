#include <cmath>
#include <numbers>

#include "chainlab/body.hpp"
#include "doctest.h"
#include "gen.hpp"
#include "oracles.hpp"

using namespace chainlab;

TEST_SUITE("bodies") {

TEST_CASE("gauge of an ellipse, an octahedron and a perturbed simplex") {
  Body ell(LqEllipsoid{2.0, {2.0, 1.0}});
  CHECK(ell.gauge(Point{2.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ell.gauge(Point{0.0, 0.5}) == doctest::Approx(0.5).epsilon(1e-12));

  Body oct(Octahedron{{1.0, 1.0}});
  CHECK(oct.gauge(Point{0.5, 0.5}) == doctest::Approx(1.0).epsilon(1e-12));

  Body ps(PerturbedSimplex{2, 0.5});
  const double u = 1.0 / std::numbers::sqrt2;
  CHECK(ps.gauge(Point{1.0 + 0.5 * u, 0.5 * u}) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(ps.gauge(Point{0.0, 0.0}) == 0.0);
}

TEST_CASE("dual gauge matches a boundary scan of the support function") {
  Body ell(LqEllipsoid{2.0, {2.0, 1.0}});
  CHECK(ell.dual_gauge(Point{1.0, 0.0}) == doctest::Approx(2.0).epsilon(1e-12));
  Body oct(Octahedron{{3.0, 1.0}});
  CHECK(oct.dual_gauge(Point{1.0, 1.0}) == doctest::Approx(3.0).epsilon(1e-12));

  // sup over the boundary (2 cos s, sin s) of <(1,1), .>
  double best = 0.0;
  for (int k = 0; k < 200000; ++k) {
    const double s = 2.0 * std::numbers::pi * k / 200000.0;
    best = std::max(best, 2.0 * std::cos(s) + std::sin(s));
  }
  CHECK(ell.dual_gauge(Point{1.0, 1.0}) == doctest::Approx(best).epsilon(1e-8));
  CHECK(ell.dual_gauge(Point{1.0, 1.0}) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
}

TEST_CASE("subgradients") {
  const auto euc = AmbientNorm::euclidean();
  Body disc(LqEllipsoid{2.0, {1.0, 1.0}});
  auto s = disc.gauge_subgradient(Point{0.6, 0.8}, euc);
  CHECK(s.z[0] == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(s.z[1] == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(s.dual_norm == doctest::Approx(1.0).epsilon(1e-12));

  Body oct(Octahedron{{2.0, 1.0}});
  auto o = oct.gauge_subgradient(Point{2.0, 0.0}, euc);
  CHECK(o.z[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(o.z[1] == 0.0);

  Body l3(LqEllipsoid{3.0, {1.0, 1.0}});
  auto g = l3.gauge_subgradient(Point{1.0, 0.0}, euc);
  CHECK(g.z[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(g.z[1]) < 1e-12);

  const std::vector<double> y = {0.3, -0.7};
  auto fd = oracle::fd_gradient([&](const std::vector<double>& v) { return oracle::lq_gauge({1.0, 1.0}, 3.0, v); }, y,
                                1e-6);
  auto an = l3.gauge_subgradient(y, euc);
  CHECK(an.z[0] == doctest::Approx(fd[0]).epsilon(1e-4));
  CHECK(an.z[1] == doctest::Approx(fd[1]).epsilon(1e-4));

  CHECK_THROWS_WITH_AS(disc.gauge_subgradient(Point{0.0, 0.0}, euc), "gauge not differentiable at origin",
                       InvalidArgument);
}

TEST_CASE("sampling") {
  Body ball(EuclideanBall{1.0, 3});
  auto pts = ball.sample_cloud(3, 7, SampleMode::Boundary);
  REQUIRE(pts.size() == 3);
  for (const auto& p : pts) CHECK(std::abs(norm2(p) - 1.0) <= 1e-9);

  Body oct(Octahedron{{1.0, 1.0, 1.0}});
  for (const auto& p : oct.sample_cloud(500, 3, SampleMode::Interior)) {
    double l1 = 0.0;
    for (double v : p) l1 += std::abs(v);
    CHECK(l1 <= 1.0 + 1e-9);
  }

  Body ell(LqEllipsoid{2.0, {2.0, 1.0}});
  auto cloud = ell.sample_cloud(10000, 1, SampleMode::Boundary);
  double best = 0.0;
  for (const auto& p : cloud) best = std::max(best, p[0] + p[1]);
  CHECK(best <= std::sqrt(5.0) + 1e-9);
  CHECK(best >= 0.99 * std::sqrt(5.0));

  auto again = ell.sample_cloud(10000, 1, SampleMode::Boundary);
  CHECK(again == cloud);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(Body(LqEllipsoid{2.0, {1.0, 2.0}}), InvalidArgument);
  CHECK_THROWS_AS(Body(LqEllipsoid{1.0, {1.0}}), InvalidArgument);
  CHECK_THROWS_AS(Body(Octahedron{{1.0, 0.0}}), InvalidArgument);
  CHECK_THROWS_AS(Body(Octahedron{std::vector<double>(kMaxDimension + 1, 1.0)}), InvalidArgument);
  CHECK_NOTHROW(Body(Octahedron{std::vector<double>(kMaxDimension, 1.0)}));
  CHECK_THROWS_AS(Body(PerturbedSimplex{4, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(Body(PerturbedSimplex{1, 0.5}), InvalidArgument);
  CHECK_THROWS_AS(Body(AbsConvPolytope{{{0.0, 0.0}}}), InvalidArgument);
  CHECK_THROWS_AS(Body(EuclideanBall{-1.0, 2}), InvalidArgument);
  Body ball(EuclideanBall{1.0, 2});
  CHECK_THROWS_AS(ball.gauge(Point{1.0, 2.0, 3.0}), InvalidArgument);
  CHECK_THROWS_AS(ball.vertices(), Unsupported);
}

TEST_CASE("polytope gauge agrees with the octahedron it describes") {
  testgen::Gen gen(11);
  const auto b = gen.semiaxes(4, 0.2, 3.0);
  std::vector<Point> verts;
  for (std::size_t i = 0; i < 4; ++i) {
    Point v(4, 0.0);
    v[i] = b[i];
    verts.push_back(v);
  }
  Body oct(Octahedron{b});
  Body poly(AbsConvPolytope{verts});
  for (int k = 0; k < 50; ++k) {
    const auto x = gen.vec(4, -2.0, 2.0);
    CHECK(poly.gauge(x) == doctest::Approx(oracle::l1_gauge(b, x)).epsilon(1e-8));
    CHECK(oct.gauge(x) == doctest::Approx(oracle::l1_gauge(b, x)).epsilon(1e-12));
    const auto z = gen.vec(4, -2.0, 2.0);
    CHECK(poly.dual_gauge(z) == doctest::Approx(oct.dual_gauge(z)).epsilon(1e-12));
  }
  Body flat(AbsConvPolytope{{{1.0, 0.0}}});
  CHECK(std::isinf(flat.gauge(Point{0.0, 1.0})));
  CHECK(flat.gauge(Point{0.5, 0.0}) == doctest::Approx(0.5));
}

TEST_CASE("projection lands on the scaled body and is a nearest point") {
  testgen::Gen gen(5);
  Body ell(LqEllipsoid{3.0, {2.0, 1.0, 0.5}});
  Body poly(AbsConvPolytope{{{1.0, 0.2, 0.0}, {0.0, 1.0, 0.3}, {0.2, 0.0, 1.0}}});
  for (const Body* body : {&ell, &poly}) {
    for (int k = 0; k < 20; ++k) {
      const auto x = gen.vec(3, -3.0, 3.0);
      const double r = gen.uniform(0.2, 1.5);
      const auto p = body->project(x, r);
      CHECK(body->gauge(p) <= r * (1.0 + 1e-7) + 1e-9);
      const double dp = std::sqrt(sq_dist(x, p));
      auto samples = body->sample_cloud(2000, 100 + k, SampleMode::Interior);
      for (auto& s : samples) {
        for (double& v : s) v *= r;
        CHECK(std::sqrt(sq_dist(x, s)) >= dp - 1e-6);
      }
    }
  }
}

TEST_CASE("ambient norms") {
  const auto a = AmbientNorm::weighted_lp(4.0, {1.0, 2.0, 4.0, 8.0});
  CHECK(a.norm(Point{1.0, 0.0, 0.0, 0.0}) == doctest::Approx(1.0));
  CHECK(a.norm(Point{0.0, 1.0, 0.0, 0.0}) == doctest::Approx(2.0));
  CHECK(a.dual_norm(Point{0.0, 1.0, 0.0, 0.0}) == doctest::Approx(0.5));
  testgen::Gen gen(3);
  for (int k = 0; k < 100; ++k) {
    const auto x = gen.vec(4, -1.0, 1.0);
    const auto z = gen.vec(4, -1.0, 1.0);
    CHECK(dot(z, x) <= a.norm(x) * a.dual_norm(z) + 1e-12);
    const auto w = a.dual_witness(x);
    CHECK(a.dual_norm(w) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dot(w, x) == doctest::Approx(a.norm(x)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(a.check_dim(3), InvalidArgument);
  const auto inf = AmbientNorm::weighted_lp(kInf, {1.0, 1.0});
  CHECK(inf.norm(Point{-3.0, 2.0}) == doctest::Approx(3.0));
  CHECK(inf.dual_norm(Point{-3.0, 2.0}) == doctest::Approx(5.0));
}

TEST_CASE("ambient radius") {
  const auto euc = AmbientNorm::euclidean();
  CHECK(ambient_radius(Body(LqEllipsoid{2.0, {3.0, 1.0}}), euc) == doctest::Approx(3.0));
  CHECK(ambient_radius(Body(Octahedron{{2.0, 1.0}}), euc) == doctest::Approx(2.0));
  CHECK(ambient_radius(Body(EuclideanBall{1.5, 4}), euc) == doctest::Approx(1.5));
  const auto w = AmbientNorm::weighted_lp(2.0, {1.0, 4.0});
  CHECK(ambient_radius(Body(Octahedron{{2.0, 1.0}}), w) == doctest::Approx(4.0));
}

}  // TEST_SUITE
