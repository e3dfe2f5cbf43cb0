#include <benchmark/benchmark.h>

#include <random>

#include "genent/channels.hpp"
#include "genent/measures.hpp"
#include "genent/purity.hpp"
#include "genent/xymodel.hpp"

using namespace genent;

static void BM_LocalQubitPurity(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ObservableAlgebra alg = local_qubit_algebra(n);
  const PureState psi = haar_random(alg.dim(), 1);
  for (auto _ : state) benchmark::DoNotOptimize(h_purity(psi, alg));
}
BENCHMARK(BM_LocalQubitPurity)->DenseRange(2, 10, 4);

static void BM_MeyerWallach(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const PureState psi = haar_random(std::size_t{1} << n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(meyer_wallach(psi));
}
BENCHMARK(BM_MeyerWallach)->DenseRange(2, 10, 4);

static void BM_BogoliubovScan(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::vector<double> grid = xy::linear_grid(0.0, 2.0, 1000);
  for (auto _ : state) benchmark::DoNotOptimize(xy::purity_scan(grid, 1.0, n, 1));
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * grid.size()));
}
BENCHMARK(BM_BogoliubovScan)->Arg(200)->Arg(2000);

static void BM_ExactGround(benchmark::State& state) {
  const xy::XYParams p{static_cast<std::size_t>(state.range(0)), 0.8, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(xy::exact_ground(p).energy);
}
BENCHMARK(BM_ExactGround)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

static void BM_RoofTwoQubits(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const DensityMatrix rho = random_mixed(4, static_cast<std::size_t>(state.range(0)), rng);
  const ObservableAlgebra alg = local_qubit_algebra(2);
  for (auto _ : state)
    benchmark::DoNotOptimize(roof_purity_deficit(rho, alg, {.restarts = 8, .seed = 1, .threads = 1}).value);
}
BENCHMARK(BM_RoofTwoQubits)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_SampleGlocc(benchmark::State& state) {
  const FactorLayout f = glocc_factors(local_qubit_algebra(2));
  std::uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_unitary_glocc(f, {.depth = static_cast<std::size_t>(state.range(0))}, ++seed));
}
BENCHMARK(BM_SampleGlocc)->Arg(1)->Arg(3);
BENCHMARK_MAIN();
