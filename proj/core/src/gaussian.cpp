#include "chainlab/gaussian.hpp"

#include <algorithm>
#include <cmath>

#include "chainlab/btcloud.hpp"
#include "chainlab/parallel.hpp"
#include "chainlab/rng.hpp"

namespace chainlab {

namespace {

struct Moments {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;
};

Moments merge(const Moments& a, const Moments& b) {
  if (a.count == 0.0) return b;
  if (b.count == 0.0) return a;
  Moments m;
  m.count = a.count + b.count;
  const double delta = b.mean - a.mean;
  m.mean = a.mean + delta * b.count / m.count;
  m.m2 = a.m2 + b.m2 + delta * delta * a.count * b.count / m.count;
  return m;
}

}  // namespace

McEstimate mc_sup(const Body& body, std::size_t samples, std::uint64_t seed) {
  require(samples >= 100, "mc_sup: samples must be >= 100");
  const std::size_t d = body.dim();
  const std::size_t chunks = (samples + kMcChunk - 1) / kMcChunk;
  std::vector<Moments> parts(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    Rng rng = Rng::substream(seed, c);
    const std::size_t count = std::min(kMcChunk, samples - c * kMcChunk);
    Point g(d);
    Moments m;
    for (std::size_t k = 0; k < count; ++k) {
      for (double& v : g) v = rng.normal();
      const double x = body.dual_gauge(g);
      m.count += 1.0;
      const double delta = x - m.mean;
      m.mean += delta / m.count;
      m.m2 += delta * (x - m.mean);
    }
    parts[c] = m;
  });
  Moments total;
  for (const auto& m : parts) total = merge(total, m);
  McEstimate est;
  est.mean = total.mean;
  est.samples = samples;
  est.seed = seed;
  const double var = total.count > 1.0 ? total.m2 / (total.count - 1.0) : 0.0;
  est.stderr_ = std::sqrt(var / total.count);
  return est;
}

BoundReport sandwich_report(const Body& body, const AmbientNorm& ambient, const SandwichConfig& config) {
  require(ambient.is_euclidean(), "sandwich_report: the Gaussian identification needs the Euclidean ambient norm");
  ambient.check_dim(body.dim());
  BoundReport rep;
  rep.q = config.q;
  if (rep.q == 0.0) rep.q = body.lr_ball() ? std::max(2.0, body.lr_ball()->r()) : 2.0;
  rep.profile = body_profile(body, ambient, config.n_max, config.profile);
  rep.dudley = dudley_bound(rep.profile, config.p);
  rep.qconvex = qconvex_bound(rep.profile, config.p, rep.q);
  rep.trivial_lower = trivial_lower_bound(rep.profile, config.p);
  const auto grid = config.a_grid.empty() ? default_a_grid(body, ambient) : config.a_grid;
  rep.interp = interpolation_bound(body, ambient, config.p, grid, config.n_max, config.profile, &rep.profile);
  rep.interpolation = rep.interp.value;
  rep.best_a = rep.interp.best_a;
  const AdmissibleSequence seq =
      build_admissible_sequence(body, ambient, config.p, rep.best_a, config.n_max, config.profile, &rep.profile);
  const auto test = body_fresh(body, config.test_cloud, mix_seed(config.seed, 0x7e57));
  rep.gamma_upper_certified = gamma_value(seq, test);
  rep.mc = mc_sup(body, config.samples, config.seed);
  const double mc = rep.mc.mean;
  if (mc > 0.0) {
    rep.dudley_ratio = rep.dudley / mc;
    rep.interpolation_ratio = rep.interpolation / mc;
    rep.qconvex_ratio = rep.qconvex / mc;
    rep.trivial_lower_ratio = rep.trivial_lower / mc;
    rep.gamma_ratio = rep.gamma_upper_certified / mc;
  }
  rep.sandwich_ok = rep.trivial_lower <= config.c_low * mc && mc <= config.c_up * rep.gamma_upper_certified;
  return rep;
}

}  // namespace chainlab
