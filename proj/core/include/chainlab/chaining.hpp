#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chainlab/body.hpp"
#include "chainlab/entropy.hpp"

namespace chainlab {

/// Sampling and covering budgets for body and B_t entropy profiles.
struct ProfileOptions {
  std::size_t cloud_size = 8192;
  std::size_t bt_cloud_size = 4096;
  /// Fresh samples used to measure cloud-to-set resolution.
  std::size_t fresh_size = 256;
  std::uint64_t seed = 1;
  CoverOptions cover;
};

/// Brackets on e_0..e_{n_max} and analytic upper bounds beyond.
struct EntropyProfile {
  std::vector<EntropyBracket> brackets;
  /// tail[k] bounds e_{n_max+1+k}; the list ends where the bound vanishes or at n = 63.
  std::vector<double> tail;
  std::string source;
  std::string tail_model;
  double resolution = 0.0;

  int n_max() const { return static_cast<int>(brackets.size()) - 1; }
  /// First tail value (0 if none).
  double tail_bound() const { return tail.empty() ? 0.0 : tail.front(); }
  std::vector<double> uppers() const;
  std::vector<double> lowers() const;
};

/// Profile of an explicit cloud; the tail uses the cloud's own diameter and cardinality.
EntropyProfile cloud_profile(const PointCloud& cloud, int n_max, const AmbientNorm& ambient,
                             const CoverOptions& opts = {});

/// Set-level profile of B: cloud brackets plus resolution, capped by analytic bounds.
EntropyProfile body_profile(const Body& body, const AmbientNorm& ambient, int n_max, const ProfileOptions& opts = {});

/// Set-level profile of B_t. Reuses `whole` (the profile of B) when B_t = B.
EntropyProfile bt_profile(const Body& body, const AmbientNorm& ambient, double t, int n_max,
                          const ProfileOptions& opts = {}, const EntropyProfile* whole = nullptr);

/// Upper bounds on e_n(B_t) for n > n_max until they vanish (or n = 63).
std::vector<double> analytic_tail(const Body& body, const AmbientNorm& ambient, const double* t, int n_max);

double dudley_bound(const EntropyProfile& profile, double p);
double qconvex_bound(const EntropyProfile& profile, double p, double q);
double trivial_lower_bound(const EntropyProfile& profile, double p);

/// d_n = max_{k<=n} 2^{lambda(k-n)} e_k.
std::vector<double> regularized_profile(const std::vector<double>& e, double lambda);
std::vector<double> regularized_profile(const EntropyProfile& profile, double lambda);

struct InterpolationLevel {
  int n = 0;
  double t = 0.0;
  double upper = 0.0;
  double lower = 0.0;
  double resolution = 0.0;
  std::string method;
  std::size_t cloud_size = 0;
};

struct InterpolationEval {
  double a = 0.0;
  /// Full value, or a partial sum already exceeding the best value when pruned.
  double value = 0.0;
  bool pruned = false;
  std::vector<InterpolationLevel> levels;
  double tail = 0.0;
};

struct InterpolationResult {
  double value = 0.0;
  double best_a = 0.0;
  /// In a_grid order.
  std::vector<InterpolationEval> evals;
};

/// 25 log-spaced points spanning [1e-3, 1e3] / diam(B).
std::vector<double> default_a_grid(const Body& body, const AmbientNorm& ambient, std::size_t points = 25);

/// min over a of 1/a + sum_n 2^{n/p} e_n(B_{a 2^{n/p}}) with analytic tails past n_max.
/// Grid points are evaluated from the largest a down and abandoned once their
/// partial sum reaches the running best.
InterpolationResult interpolation_bound(const Body& body, const AmbientNorm& ambient, double p,
                                        const std::vector<double>& a_grid, int n_max,
                                        const ProfileOptions& opts = {}, const EntropyProfile* whole = nullptr,
                                        bool prune = true);

struct AdmissibleSequence {
  std::vector<std::vector<Point>> levels;
  double p = 2.0;
  double a = 1.0;
  /// Upper bounds on the entropy numbers of the sets approximated past the last level.
  std::vector<double> tail;
  AmbientNorm ambient = AmbientNorm::euclidean();
};

/// T_0 = {0}; T_n is the covering net of the B_{a 2^{n/p}} cloud with |T_n| <= 2^{2^n} - 1, clipped to B.
AdmissibleSequence build_admissible_sequence(const Body& body, const AmbientNorm& ambient, double p, double a,
                                             int n_max, const ProfileOptions& opts = {},
                                             const EntropyProfile* whole = nullptr);

/// sup_x sum_n 2^{n/p} d(x, T_n) + 2 sum_{n > n_max} 2^{n/p} tail(n).
double gamma_value(const AdmissibleSequence& seq, const std::vector<Point>& test_cloud);
double gamma_value(const AdmissibleSequence& seq, const std::vector<Point>& test_cloud, double p);

struct CarlRatio {
  double lhs = 0.0;
  double lhs_lower = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

/// Both sides of the Carl-type equivalence for the l_r ellipsoid with semiaxes c:
/// sum_n (2^{n(1/s+1/r-1/2)} e_n)^u against sum_k (k^{1/s-1/u} c_k)^u.
CarlRatio carl_ratio(const std::vector<double>& c, double r, double s, double u, int n_max,
                     const ProfileOptions& opts = {});

}  // namespace chainlab
