#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace chainlab {

/// Deterministic random source used by every sampler in the library.
///
/// The generator is xoshiro256** seeded through splitmix64. Normal deviates
/// use the Box-Muller transform (both branches used, the sine branch cached),
/// gamma deviates use Marsaglia-Tsang. None of this depends on the standard
/// library's distribution implementations, so streams are identical across
/// toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Independent stream for chunk `index` of a computation seeded by `seed`.
  static Rng substream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1).
  double uniform_open();
  double normal();
  double exponential();
  double gamma(double shape);
  /// Uniform integer in [0, n).
  std::size_t below(std::size_t n);
  /// Random sign, +1 or -1.
  double sign();

 private:
  std::array<std::uint64_t, 4> state_{};
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// splitmix64 finalizer; also used to derive per-entry seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace chainlab
