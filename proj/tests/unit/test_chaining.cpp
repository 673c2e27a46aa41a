#include <cmath>
#include <numbers>

#include "chainlab/btcloud.hpp"
#include "chainlab/chaining.hpp"
#include "chainlab/checks.hpp"
#include "chainlab/kfun.hpp"
#include "doctest.h"
#include "gen.hpp"
#include "oracles.hpp"

using namespace chainlab;

namespace {

EntropyProfile manual_profile(const std::vector<double>& upper, const std::vector<double>& lower,
                              std::vector<double> tail = {}) {
  EntropyProfile prof;
  for (std::size_t n = 0; n < upper.size(); ++n) {
    EntropyBracket br;
    br.n = static_cast<int>(n);
    br.upper = upper[n];
    br.lower = lower[n];
    br.cardinality_bound = cardinality_cap(br.n);
    prof.brackets.push_back(br);
  }
  prof.tail = std::move(tail);
  return prof;
}

ProfileOptions small_opts() {
  ProfileOptions o;
  o.cloud_size = 2048;
  o.bt_cloud_size = 1024;
  o.fresh_size = 128;
  return o;
}

}  // namespace

TEST_SUITE("chaining") {

TEST_CASE("Dudley sums") {
  auto prof = manual_profile({1.0, 0.0, 0.0}, {1.0, 0.0, 0.0});
  CHECK(dudley_bound(prof, 2.0) == doctest::Approx(1.0));
  auto prof2 = manual_profile({2.0, 1.0}, {1.0, 0.5}, {0.5});
  CHECK(dudley_bound(prof2, 2.0) == doctest::Approx(2.0 + std::sqrt(2.0) + 0.5 * 2.0));
  CHECK(dudley_bound(prof2, 1.0) == doctest::Approx(2.0 + 2.0 + 0.5 * 4.0));
  CHECK_THROWS_AS(dudley_bound(prof, 0.0), InvalidArgument);

  auto scaled = manual_profile({3.0, 1.5}, {1.5, 0.75}, {0.75});
  CHECK(dudley_bound(scaled, 2.0) == doctest::Approx(1.5 * dudley_bound(prof2, 2.0)));

  const auto euc = AmbientNorm::euclidean();
  std::vector<Point> line;
  testgen::Gen gen(1);
  for (int k = 0; k < 2000; ++k) line.push_back({gen.uniform(-1.0, 1.0)});
  auto lp = cloud_profile(PointCloud{line, "interval"}, 3, euc);
  const double d = dudley_bound(lp, 2.0);
  CHECK(d >= 1.0);
  CHECK(d <= 4.0);
}

TEST_CASE("q-convex sums") {
  auto prof = manual_profile({1.0, 0.0, 0.0}, {1.0, 0.0, 0.0});
  CHECK(qconvex_bound(prof, 2.0, 2.0) == doctest::Approx(1.0));
  auto prof2 = manual_profile({2.0, 1.0, 0.5}, {1.0, 0.5, 0.2}, {0.1});
  CHECK(qconvex_bound(prof2, 2.0, 1e6) == doctest::Approx(dudley_bound(prof2, 2.0)).epsilon(1e-3));
  CHECK(qconvex_bound(prof2, 2.0, 2.0) <= dudley_bound(prof2, 2.0));
  CHECK(qconvex_bound(prof2, 2.0, 2.0) >= trivial_lower_bound(manual_profile({2.0, 1.0, 0.5}, {2.0, 1.0, 0.5}), 2.0));
  CHECK_THROWS_AS(qconvex_bound(prof2, 2.0, 1.0), InvalidArgument);

  std::vector<double> b;
  double s2 = 0.0;
  for (int k = 0; k < 8; ++k) {
    b.push_back(std::ldexp(1.0, -k));
    s2 += b.back() * b.back();
  }
  const auto euc = AmbientNorm::euclidean();
  auto ep = body_profile(Body(LqEllipsoid{2.0, b}), euc, 4, small_opts());
  const double v = qconvex_bound(ep, 2.0, 2.0);
  CHECK(v >= std::sqrt(s2) / 30.0);
  CHECK(v <= std::sqrt(s2) * 30.0);
}

TEST_CASE("trivial lower bound") {
  CHECK(trivial_lower_bound(manual_profile({1.0, 0.0}, {1.0, 0.0}), 2.0) == doctest::Approx(1.0));
  CHECK(trivial_lower_bound(manual_profile({1.0, 0.8}, {0.5, 0.6}), 2.0) == doctest::Approx(0.6 * std::sqrt(2.0)));
  const auto euc = AmbientNorm::euclidean();
  auto pair = cloud_profile(PointCloud{{{-1.0}, {1.0}}, "pair"}, 1, euc);
  CHECK(trivial_lower_bound(pair, 2.0) == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<Point> circle;
  for (int k = 0; k < 1000; ++k) {
    const double th = 2.0 * std::numbers::pi * k / 1000.0;
    circle.push_back({std::cos(th), std::sin(th)});
  }
  const double lower = trivial_lower_bound(cloud_profile(PointCloud{circle, "circle"}, 4, euc), 2.0);
  CHECK(lower <= 4.0 * oracle::chi_mean(2));
  CHECK(lower >= oracle::chi_mean(2) / 4.0);
}

TEST_CASE("regularized profiles") {
  auto d = regularized_profile(std::vector<double>{1.0, 0.0, 0.0}, 1.0);
  CHECK(d == std::vector<double>{1.0, 0.5, 0.25});
  CHECK(regularized_profile(std::vector<double>{2.0, 2.0, 2.0}, 0.5) == std::vector<double>{2.0, 2.0, 2.0});
  CHECK_THROWS_AS(regularized_profile(std::vector<double>{1.0}, 0.0), InvalidArgument);
  testgen::Gen gen(9);
  for (int trial = 0; trial < 50; ++trial) {
    const auto e = gen.vec(10, 0.0, 1.0);
    const double lambda = gen.uniform(0.1, 3.0);
    const auto r = regularized_profile(e, lambda);
    for (std::size_t n = 0; n < e.size(); ++n) {
      double brute = 0.0;
      for (std::size_t k = 0; k <= n; ++k)
        brute = std::max(brute, std::exp2(lambda * (static_cast<double>(k) - static_cast<double>(n))) * e[k]);
      CHECK(r[n] == doctest::Approx(brute).epsilon(1e-12));
      CHECK(r[n] >= e[n]);
      if (n > 0) CHECK(r[n] >= std::exp2(-lambda) * r[n - 1] * (1.0 - 1e-12));
    }
  }
}

TEST_CASE("interpolation bound on a disc") {
  const auto euc = AmbientNorm::euclidean();
  Body disc(EuclideanBall{1.0, 2});
  const auto opts = small_opts();
  const auto grid = default_a_grid(disc, euc, 13);
  CHECK(grid.front() == doctest::Approx(1e-3 / 2.0));
  CHECK(grid.back() == doctest::Approx(1e3 / 2.0));
  auto res = interpolation_bound(disc, euc, 2.0, grid, 4, opts);
  CHECK(res.value >= 0.5 * oracle::chi_mean(2));
  CHECK(res.value <= 10.0 * oracle::chi_mean(2));
  CHECK(res.evals.size() == grid.size());

  auto unpruned = interpolation_bound(disc, euc, 2.0, grid, 4, opts, nullptr, false);
  CHECK(unpruned.value == res.value);
  CHECK(unpruned.best_a == res.best_a);
  for (const auto& ev : unpruned.evals) {
    CHECK_FALSE(ev.pruned);
    CHECK(ev.value >= res.value);
  }

  const auto whole = body_profile(disc, euc, 4, opts);
  auto reused = interpolation_bound(disc, euc, 2.0, grid, 4, opts, &whole);
  CHECK(reused.value == res.value);

  // Scaling the disc by s and the grid by 1/s scales the bound by s.
  // A power of two keeps threshold comparisons such as t = 1/radius exact.
  const double s = 4.0;
  std::vector<double> grid_s = grid;
  for (double& a : grid_s) a /= s;
  auto big = interpolation_bound(disc.scaled(s), euc, 2.0, grid_s, 4, opts);
  CHECK(big.value == doctest::Approx(s * res.value).epsilon(1e-9));

  CHECK_THROWS_AS(interpolation_bound(disc, euc, 2.0, {}, 4, opts), InvalidArgument);
  CHECK_THROWS_AS(interpolation_bound(disc, euc, 2.0, {-1.0}, 4, opts), InvalidArgument);
  CHECK_THROWS_AS(interpolation_bound(disc, euc, 2.0, grid, 5, opts), InvalidArgument);
}

TEST_CASE("admissible sequences") {
  const auto euc = AmbientNorm::euclidean();
  const auto opts = small_opts();
  Body oct(Octahedron{{1.0, 1.0}});
  auto seq = build_admissible_sequence(oct, euc, 2.0, 1.0, 2, opts);
  REQUIRE(seq.levels.size() == 3);
  CHECK(seq.levels[0] == std::vector<Point>{Point{0.0, 0.0}});
  for (std::size_t n = 0; n < seq.levels.size(); ++n) {
    CHECK(seq.levels[n].size() <= cardinality_cap(static_cast<int>(n)));
    for (const auto& x : seq.levels[n]) CHECK(oct.gauge(x) <= 1.0 + 1e-9);
  }

  Body disc(EuclideanBall{1.0, 2});
  auto ds = build_admissible_sequence(disc, euc, 2.0, 1.0, 4, opts);
  auto interp = interpolation_bound(disc, euc, 2.0, {1.0}, 4, opts);
  const auto test = body_fresh(disc, 2048, 77);
  CHECK(gamma_value(ds, test) <= interp.value + 1e-6);
  auto prof = body_profile(disc, euc, 4, opts);
  CHECK(gamma_value(ds, test) >= trivial_lower_bound(prof, 2.0) / 1.5);
}

TEST_CASE("gamma of a hand-built sequence") {
  AdmissibleSequence seq;
  seq.levels = {{{0.0, 0.0}}, {{0.0, 0.0}}, {{0.0, 0.0}}};
  std::vector<Point> circle;
  for (int k = 0; k < 16; ++k) circle.push_back({std::cos(k * 0.4), std::sin(k * 0.4)});
  const double head = 1.0 + std::sqrt(2.0) + 2.0;
  CHECK(gamma_value(seq, circle) == doctest::Approx(head).epsilon(1e-12));
  seq.tail = {0.1};
  CHECK(gamma_value(seq, circle) == doctest::Approx(head + 2.0 * std::pow(2.0, 1.5) * 0.1).epsilon(1e-12));
  CHECK(gamma_value(seq, {Point{0.0, 0.0}}) == doctest::Approx(2.0 * std::pow(2.0, 1.5) * 0.1));
  CHECK(gamma_value(seq, circle, 1.0) == doctest::Approx(1.0 + 2.0 + 4.0 + 2.0 * 8.0 * 0.1).epsilon(1e-12));
}

TEST_CASE("contraction check") {
  ContractionOptions opts;
  opts.profile = small_opts();
  const auto euc = AmbientNorm::euclidean();
  auto ball = contraction_check(Body(EuclideanBall{1.0, 2}), euc, 2.0, {2.0}, 3, opts);
  CHECK(std::isfinite(ball.k_emp));
  CHECK(ball.violations == 0);
  for (const auto& row : ball.rows) CHECK(row.margin >= 0.0);

  auto l3 = contraction_check(Body(LqEllipsoid{3.0, {1.0, 0.5, 0.25}}), euc, 3.0, {0.5, 1.0, 2.0}, 3, opts);
  CHECK(l3.rows.size() == 9);
  CHECK(l3.violations == 0);
}

TEST_CASE("q-convexity modulus") {
  Body ball(EuclideanBall{1.0, 3});
  const double eta = qconvexity_modulus(ball, 4000, 1);
  CHECK(eta >= 0.125 - 0.01);
  CHECK(eta == qconvexity_modulus(ball, 4000, 1));
  CHECK(qconvexity_modulus(Body(LqEllipsoid{3.0, {1.0, 0.5, 0.25}}), 4000, 2) > 0.0);
}

TEST_CASE("unconditional assumption") {
  auto eu = unconditional_assumption_check(2.0, {1.0, 1.0, 1.0}, 2.0, {1.0}, 3000, 1);
  CHECK(eu.ok);
  for (const auto& row : eu.rows) CHECK(row.max_ratio <= 2.0 * 1.01);
  auto w = unconditional_assumption_check(1.5, {1.0, 2.0, 4.0}, 4.0, {1.0, 2.0}, 3000, 2);
  CHECK(w.ok);
  for (const auto& row : w.rows) {
    CHECK(row.bound == doctest::Approx(2.0));
    CHECK(row.max_ratio <= row.bound * 1.01);
  }

  // Along a coordinate axis the ratio is explicit: |s - s'|^{q-1} / (t w_1).
  const double q = 3.0, t = 2.0, w1 = 1.0;
  const auto amb = AmbientNorm::weighted_lp(4.0, {w1, 2.0});
  Body lq(LqEllipsoid{q, {1.0, 1.0}});
  testgen::Gen gen(6);
  for (int k = 0; k < 200; ++k) {
    const Point x = {gen.uniform(-1.0, 1.0), 0.0};
    const Point y = {gen.uniform(-1.0, 1.0), 0.0};
    if (x[0] == 0.0 || y[0] == 0.0) continue;
    REQUIRE(bt_member(lq, amb, t, x).member);
    REQUIRE(bt_member(lq, amb, t, y).member);
    const double diff = std::abs(x[0] - y[0]);
    const double ratio = std::pow(diff, q) / (t * amb.distance(x, y));
    CHECK(ratio == doctest::Approx(std::pow(diff, q - 1.0) / (t * w1)));
    CHECK(ratio <= std::exp2(1.0 + (q - 2.0)) * 1.01);
  }
}

TEST_CASE("perturbed simplex counterexample") {
  auto rep = counterexample_check(4, 0.5, 2.0, 300, 1);
  CHECK(rep.guaranteed);
  CHECK(rep.all_pass);
  CHECK(rep.passed == rep.tested);
  CHECK(rep.max_residual <= 1e-9);
  CHECK(rep.witness_norm == doctest::Approx(0.5 / (0.5 + 0.5)).epsilon(1e-12));
  CHECK(rep.witness_threshold == doctest::Approx(1.0 / (0.5 + 0.5)).epsilon(1e-12));

  auto edge = counterexample_check(16, 0.25, 1.0 / (0.25 + 0.25), 100, 3);
  CHECK(std::abs(edge.witness_norm - 1.0) <= 1e-12);
  CHECK(edge.all_pass);

  auto below = counterexample_check(4, 0.5, 1.5, 100, 1);
  CHECK_FALSE(below.guaranteed);
  CHECK(rep.vertex_entropy_lower.size() == 5);
}

}  // TEST_SUITE
