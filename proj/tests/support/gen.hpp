#pragma once

// Seeded generators for property tests. Deliberately independent of the
// library's own random number generator.

#include <algorithm>
#include <cmath>
#include <functional>
#include <cstdint>
#include <numbers>
#include <vector>

namespace testgen {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : state_(seed * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform(double lo = 0.0, double hi = 1.0) {
    return lo + (hi - lo) * (static_cast<double>(next() >> 11) * 0x1.0p-53);
  }

  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

  int integer(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }

  double normal() {
    double u = 0.0;
    while (u == 0.0) u = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * uniform());
  }

  std::vector<double> vec(std::size_t d, double lo, double hi) {
    std::vector<double> v(d);
    for (double& x : v) x = uniform(lo, hi);
    return v;
  }

  std::vector<double> gaussian(std::size_t d) {
    std::vector<double> v(d);
    for (double& x : v) x = normal();
    return v;
  }

  /// Positive, nonincreasing.
  std::vector<double> semiaxes(std::size_t d, double lo, double hi) {
    std::vector<double> v = vec(d, lo, hi);
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
  }

 private:
  std::uint64_t state_;
};

}  // namespace testgen
