#include <benchmark/benchmark.h>

#include "cohdyn/cohdyn.hpp"

using namespace cohdyn;

static void BM_VonNeumannEntropy(benchmark::State& state) {
  const DensityMatrix rho = random_mixed_state(static_cast<int>(state.range(0)), 2, 7);
  for (auto _ : state) benchmark::DoNotOptimize(von_neumann_entropy(rho));
}
BENCHMARK(BM_VonNeumannEntropy)->DenseRange(2, 6);

static void BM_CoherenceRecord(benchmark::State& state) {
  const DensityMatrix rho = density_of(named_state(NamedState::WWBar));
  for (auto _ : state) benchmark::DoNotOptimize(coherence_record(rho));
}
BENCHMARK(BM_CoherenceRecord);

static void BM_HClosed(benchmark::State& state) {
  const BathParams p{1.0, 0.01, 0.5};
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(h_closed(t, p));
    t = t > 400.0 ? 0.0 : t + 0.1;
  }
}
BENCHMARK(BM_HClosed);

static void BM_HOracle(benchmark::State& state) {
  const BathParams p{1.0, 1.0, 0.5};
  std::vector<double> grid(2000);
  for (std::size_t k = 0; k < grid.size(); ++k) grid[k] = 20.0 * static_cast<double>(k) / 1999.0;
  for (auto _ : state) benchmark::DoNotOptimize(h_oracle(p, grid));
}
BENCHMARK(BM_HOracle)->Unit(benchmark::kMillisecond);

static void BM_Sweep(benchmark::State& state) {
  SweepOptions o;
  o.n_points = static_cast<int>(state.range(0));
  o.threads = 1;
  const PureState psi = named_state(NamedState::W);
  for (auto _ : state) benchmark::DoNotOptimize(sweep(psi, BathParams{1.0, 0.01, 0.0}, CouplingMask::full(3), o));
}
BENCHMARK(BM_Sweep)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
