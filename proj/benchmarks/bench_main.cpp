#include <benchmark/benchmark.h>

#include <vector>

#include "momrob/data.hpp"
#include "momrob/mom.hpp"
#include "momrob/optim.hpp"
#include "momrob/rng.hpp"

using namespace momrob;

static void BM_MomEstimate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(RngSeed{1});
  std::vector<double> values(n);
  for (double& v : values) v = rng.normal();
  const Partition p = random_equipartition(n, 101, rng);
  for (auto _ : state) benchmark::DoNotOptimize(mom_estimate(values, p));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_MomEstimate)->Arg(1000)->Arg(10000)->Arg(100000);

static void BM_MomGdStep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Dataset ds = generate_toy(n, n / 20, RngSeed{2});
  MomGdConfig cfg;
  cfg.k = 120;
  cfg.iterations = 1;
  LinearModel m = LinearModel::zeros(2);
  std::uint64_t step = 0;
  for (auto _ : state) {
    cfg.seed = RngSeed{++step};
    m = mom_gd_train(ds, m, cfg).model;
    benchmark::DoNotOptimize(m.b);
  }
}
BENCHMARK(BM_MomGdStep)->Arg(600)->Arg(6000);

static void BM_BlockKernels(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const Dataset ds = generate_gaussians(4000, RngSeed{3});
  Rng rng(RngSeed{4});
  const Partition p = random_equipartition(ds.size(), k, rng);
  const KernelSpec spec{KernelKind::Rbf, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(block_kernel_matrices(ds, p, spec));
  state.counters["entries"] = static_cast<double>(k * (4000 / k) * (4000 / k));
}
BENCHMARK(BM_BlockKernels)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_FastKlrTrain(benchmark::State& state) {
  const Dataset ds = generate_gaussians(static_cast<std::size_t>(state.range(0)), RngSeed{5});
  FastKlrConfig cfg;
  cfg.k = 20;
  cfg.iterations = 10;
  cfg.kernel = {KernelKind::Rbf, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(fast_klr_mom_train(ds, cfg).model.alpha.sum());
}
BENCHMARK(BM_FastKlrTrain)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
