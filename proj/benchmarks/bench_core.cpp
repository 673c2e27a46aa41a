#include <benchmark/benchmark.h>

#include "chainlab/btcloud.hpp"
#include "chainlab/chaining.hpp"
#include "chainlab/entropy.hpp"
#include "chainlab/gaussian.hpp"
#include "chainlab/kfun.hpp"

using namespace chainlab;

namespace {

std::vector<double> harmonic(std::size_t d) {
  std::vector<double> b(d);
  for (std::size_t k = 0; k < d; ++k) b[k] = 1.0 / std::sqrt(static_cast<double>(k + 1));
  return b;
}

void BM_KFunctionalEllipsoid(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const Body body(LqEllipsoid{2.0, harmonic(d)});
  const auto euc = AmbientNorm::euclidean();
  const Point x(d, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(k_functional(body, euc, 1.0, x).value);
}
BENCHMARK(BM_KFunctionalEllipsoid)->Arg(4)->Arg(64)->Arg(1024);

void BM_KFunctionalWeighted(benchmark::State& state) {
  const Body body(Octahedron{harmonic(8)});
  const auto amb = AmbientNorm::weighted_lp(4.0, {1, 2, 3, 4, 5, 6, 7, 8});
  const Point x(8, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(k_functional(body, amb, 2.0, x).value);
}
BENCHMARK(BM_KFunctionalWeighted);

void BM_EntropyBrackets(benchmark::State& state) {
  const Body body(EuclideanBall{1.0, 8});
  const auto cloud = body.sample_cloud(static_cast<std::size_t>(state.range(0)), 1, SampleMode::Interior);
  const auto euc = AmbientNorm::euclidean();
  for (auto _ : state) benchmark::DoNotOptimize(entropy_brackets(cloud, 3, euc).back().upper);
}
BENCHMARK(BM_EntropyBrackets)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_BtCloudOctahedron(benchmark::State& state) {
  const Body body(Octahedron{harmonic(64)});
  const auto euc = AmbientNorm::euclidean();
  for (auto _ : state) benchmark::DoNotOptimize(bt_cloud(body, euc, 6.0, 4096, 1).points.size());
}
BENCHMARK(BM_BtCloudOctahedron)->Unit(benchmark::kMillisecond);

void BM_McSup(benchmark::State& state) {
  const Body body(LqEllipsoid{2.0, harmonic(64)});
  for (auto _ : state) benchmark::DoNotOptimize(mc_sup(body, 16384, 1).mean);
}
BENCHMARK(BM_McSup)->Unit(benchmark::kMillisecond);

void BM_InterpolationBound(benchmark::State& state) {
  const Body body(LqEllipsoid{2.0, harmonic(16)});
  const auto euc = AmbientNorm::euclidean();
  ProfileOptions opts;
  opts.cloud_size = 1024;
  opts.bt_cloud_size = 512;
  const auto grid = default_a_grid(body, euc, 9);
  for (auto _ : state) benchmark::DoNotOptimize(interpolation_bound(body, euc, 2.0, grid, 3, opts).value);
}
BENCHMARK(BM_InterpolationBound)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
