#include <cmath>
#include <numbers>

#include "chainlab/chaining.hpp"
#include "chainlab/entropy.hpp"
#include "doctest.h"
#include "gen.hpp"
#include "oracles.hpp"

using namespace chainlab;

namespace {

std::vector<Point> line_cloud(const std::vector<double>& xs) {
  std::vector<Point> out;
  for (double x : xs) out.push_back({x});
  return out;
}

std::vector<Point> circle_cloud(std::size_t n) {
  std::vector<Point> out;
  for (std::size_t k = 0; k < n; ++k) {
    const double th = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    out.push_back({std::cos(th), std::sin(th)});
  }
  return out;
}

}  // namespace

TEST_SUITE("entropy") {

TEST_CASE("greedy cover examples") {
  const auto euc = AmbientNorm::euclidean();
  const auto pair = line_cloud({-1.0, 1.0});
  CHECK(greedy_cover(pair, 1, euc).radius == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(greedy_cover(pair, 2, euc).radius == 0.0);

  testgen::Gen gen(1);
  const auto xs = gen.vec(1000, -1.0, 1.0);
  const auto cloud = line_cloud(xs);
  auto cov = greedy_cover(cloud, 3, euc);
  CHECK(cov.net.size() <= 3);
  CHECK(cov.radius <= 1.0 / 3.0 + 0.01);
  CHECK(cov.radius >= oracle::cover_1d(xs, 3) - 1e-12);
  CHECK(covering_radius(cloud, cov.net, euc) == cov.radius);
  CHECK_THROWS_AS(greedy_cover({}, 1, euc), InvalidArgument);
  CHECK_THROWS_AS(greedy_cover(pair, 0, euc), InvalidArgument);
}

TEST_CASE("packing bound examples") {
  const auto euc = AmbientNorm::euclidean();
  const auto pair = line_cloud({-1.0, 1.0});
  const double r = packing_bound(pair, 1, euc);
  CHECK(r < 1.0);
  CHECK(r > 1.0 - 1e-12);
  CHECK(packing_bound(pair, 2, euc) == 0.0);
  testgen::Gen gen(2);
  const auto xs = gen.vec(1000, -1.0, 1.0);
  CHECK(packing_bound(line_cloud(xs), 3, euc) >= 1.0 / 3.0 - 0.01);
}

TEST_CASE("bracket examples") {
  const auto euc = AmbientNorm::euclidean();
  const auto pair = line_cloud({-1.0, 1.0});
  auto b0 = entropy_bracket(pair, 0, euc);
  CHECK(b0.upper == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b0.lower == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b0.lower <= b0.upper);
  CHECK(b0.cardinality_bound == 1);
  CHECK(entropy_bracket(pair, 1, euc).upper == 0.0);
  CHECK_THROWS_AS(entropy_bracket(pair, 5, euc), InvalidArgument);

  const auto circ = circle_cloud(2000);
  auto b1 = entropy_bracket(circ, 1, euc);
  CHECK(b1.upper == doctest::Approx(oracle::circle_cover(3)).epsilon(0.25));
  CHECK(b1.lower <= oracle::circle_cover(3) + 1e-12);
  CHECK(b1.net.size() <= 3);
  CHECK(cardinality_cap(0) == 1);
  CHECK(cardinality_cap(2) == 15);
  CHECK(cardinality_cap(7) == UINT64_MAX);
}

TEST_CASE("volumetric tail examples") {
  CHECK(volumetric_tail(1, 2.0, 3) == doctest::Approx(0.0234375).epsilon(1e-12));
  CHECK(volumetric_tail(2, 2.0, 0) == doctest::Approx(4.242640687).epsilon(1e-9));
  const auto euc = AmbientNorm::euclidean();
  testgen::Gen gen(3);
  std::vector<Point> disc;
  while (disc.size() < 3000) {
    Point p = gen.vec(2, -1.0, 1.0);
    if (norm2(p) <= 1.0) disc.push_back(p);
  }
  auto br = entropy_brackets(disc, 4, euc);
  for (int n = 2; n <= 4; ++n) CHECK(volumetric_tail(2, 2.0, n) >= br[n].upper);
}

TEST_CASE("brackets enclose the exact covering numbers of a line cloud") {
  const auto euc = AmbientNorm::euclidean();
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    testgen::Gen gen(seed);
    const auto xs = gen.vec(300, -1.0, 1.0);
    auto br = entropy_brackets(line_cloud(xs), 3, euc);
    for (int n = 0; n <= 3; ++n) {
      const double exact = oracle::cover_1d(xs, cardinality_cap(n));
      CHECK(br[n].lower <= exact + 1e-12);
      CHECK(br[n].upper >= exact - 1e-12);
    }
  }
}

TEST_CASE("bracket invariants") {
  const auto euc = AmbientNorm::euclidean();
  const auto amb = AmbientNorm::weighted_lp(3.0, {1.0, 2.0, 0.5});
  testgen::Gen gen(4);
  for (const AmbientNorm* a : {&euc, &amb}) {
    std::vector<Point> cloud;
    for (int k = 0; k < 800; ++k) cloud.push_back(gen.vec(3, -1.0, 1.0));
    auto br = entropy_brackets(cloud, 3, *a);
    REQUIRE(br.size() == 4);
    for (int n = 0; n <= 3; ++n) {
      CHECK(br[n].n == n);
      CHECK(br[n].lower <= br[n].upper);
      CHECK(br[n].net.size() <= cardinality_cap(n));
      CHECK(covering_radius(cloud, br[n].net, *a) == doctest::Approx(br[n].upper).epsilon(1e-12));
      if (n > 0) CHECK(br[n].upper <= br[n - 1].upper);
    }
    double diam = 0.0;
    for (const auto& x : cloud)
      for (const auto& y : cloud) diam = std::max(diam, a->distance(x, y));
    CHECK(diam <= 2.0 * br[0].upper + 1e-12);

    std::vector<Point> doubled = cloud;
    for (auto& p : doubled)
      for (double& v : p) v *= 2.0;
    auto br2 = entropy_brackets(doubled, 3, *a);
    for (int n = 0; n <= 3; ++n) {
      CHECK(br2[n].upper == doctest::Approx(2.0 * br[n].upper).epsilon(1e-9));
      CHECK(br2[n].lower == doctest::Approx(2.0 * br[n].lower).epsilon(1e-9));
    }

    std::vector<Point> subset(cloud.begin(), cloud.begin() + 200);
    auto bs = entropy_brackets(subset, 3, *a);
    for (int n = 0; n <= 3; ++n) CHECK(bs[n].lower <= br[n].upper);
  }
}

TEST_CASE("resolution helpers") {
  const auto euc = AmbientNorm::euclidean();
  const auto cloud = line_cloud({0.0, 1.0});
  CHECK(cloud_resolution(cloud, line_cloud({0.25, 0.9}), euc) == doctest::Approx(0.25));
  CHECK(covering_radius(line_cloud({-2.0, 3.0}), line_cloud({0.0}), euc) == doctest::Approx(3.0));
}

TEST_CASE("cloud profiles") {
  const auto euc = AmbientNorm::euclidean();
  PointCloud pc{line_cloud({-1.0, 1.0}), "pair"};
  auto prof = cloud_profile(pc, 2, euc);
  CHECK(prof.n_max() == 2);
  CHECK(prof.uppers()[0] == doctest::Approx(1.0));
  CHECK(prof.uppers()[1] == 0.0);
  CHECK(prof.tail_bound() == 0.0);
  CHECK(prof.lowers().size() == 3);

  PointCloud circ{circle_cloud(500), "circle"};
  auto pc2 = cloud_profile(circ, 2, euc);
  CHECK_FALSE(pc2.tail.empty());
  for (double v : pc2.tail) CHECK(v <= pc2.brackets.back().upper + 1e-12);
}

TEST_CASE("Carl-type ratio") {
  auto one = carl_ratio({1.0}, 2.0, 1.0, 1.0, 4);
  CHECK(one.rhs == doctest::Approx(1.0));
  CHECK(one.ratio >= 0.1);
  CHECK(one.ratio <= 10.0);
  CHECK(one.lhs_lower <= one.lhs);

  const std::vector<double> c = {1.0, 0.5, 0.25, 0.125};
  auto geo = carl_ratio(c, 2.0, 1.0, 1.0, 4);
  CHECK(geo.ratio >= 0.02);
  CHECK(geo.ratio <= 50.0);

  std::vector<double> c2 = c;
  for (double& v : c2) v *= 2.0;
  auto geo2 = carl_ratio(c2, 2.0, 1.0, 1.0, 4);
  CHECK(geo2.ratio == doctest::Approx(geo.ratio).epsilon(1e-6));

  CHECK_THROWS_AS(carl_ratio(c, 2.0, -1.0, 1.0, 4), InvalidArgument);
  CHECK_THROWS_AS(carl_ratio({0.5, 1.0}, 2.0, 1.0, 1.0, 4), InvalidArgument);
  CHECK_THROWS_AS(carl_ratio(c, 8.0, 4.0, 1.0, 4), InvalidArgument);
}

}  // TEST_SUITE
