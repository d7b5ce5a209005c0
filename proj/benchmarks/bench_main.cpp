#include <benchmark/benchmark.h>

#include "specpart/frontier.hpp"
#include "specpart/metrics.hpp"
#include "specpart/partition.hpp"
#include "specpart/rng.hpp"
#include "specpart/sbm.hpp"

using namespace specpart;

static void BM_SampleGraph(benchmark::State& state) {
  const int n = int(state.range(0));
  const SbmParams params{n, 0.06 * n, 0.04 * n};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    PlantedGraph g = sample_graph(params, ++seed);
    benchmark::DoNotOptimize(g.adjacency.edge_count());
  }
}
BENCHMARK(BM_SampleGraph)->Arg(250)->Arg(500)->Arg(1000);

static void BM_TopTwoEigenpairs(benchmark::State& state) {
  const int n = int(state.range(0));
  const SbmParams params{n, 0.06 * n, 0.04 * n};
  SymMatrix a = to_dense(sample_graph(params, 1).adjacency);
  for (auto _ : state) {
    auto pairs = top_k_eigenpairs(a, 2, 1e-10);
    benchmark::DoNotOptimize(pairs[1].value);
  }
}
BENCHMARK(BM_TopTwoEigenpairs)->Arg(250)->Arg(500)->Arg(1000)
    ->Unit(benchmark::kMillisecond);

static void BM_SpectralPartition(benchmark::State& state) {
  const int n = int(state.range(0));
  const SbmParams params{n, 0.06 * n, 0.04 * n};
  SymMatrix a = to_dense(sample_graph(params, 1).adjacency);
  for (auto _ : state) {
    PartitionResult p = spectral_partition_simplified(a, params.degree_scale());
    benchmark::DoNotOptimize(p.side1.front());
  }
}
BENCHMARK(BM_SpectralPartition)->Arg(250)->Arg(500)
    ->Unit(benchmark::kMillisecond);

static void BM_NoiseNorm(benchmark::State& state) {
  const int n = int(state.range(0));
  const SbmParams params{n, 0.06 * n, 0.04 * n};
  PlantedGraph g = sample_graph(params, 1);
  for (auto _ : state) benchmark::DoNotOptimize(noise_norm(g));
}
BENCHMARK(BM_NoiseNorm)->Arg(250)->Arg(500)->Unit(benchmark::kMillisecond);

static void BM_SolveProgram(benchmark::State& state) {
  const int n = int(state.range(0));
  ChernoffProgram prog;
  prog.n = n;
  prog.constants = chernoff_constants(n, 0.06 * n, 0.04 * n);
  prog.k = n / 10;
  for (auto _ : state) {
    SolverResult sol = solve_chernoff_program(prog);
    benchmark::DoNotOptimize(sol.objective);
  }
}
BENCHMARK(BM_SolveProgram)->Arg(100)->Arg(500)->Arg(1000);

static void BM_SampleY(benchmark::State& state) {
  const int n = int(state.range(0));
  Xoshiro256ss rng(1);
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_Y(n, 0.06 * n, 0.04 * n, rng));
}
BENCHMARK(BM_SampleY)->Arg(500)->Arg(1000);

static void BM_McRepetition(benchmark::State& state) {
  const int n = int(state.range(0));
  auto grid = default_k_grid(n);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto pts = mc_frontier(n, 0.06 * n, 0.04 * n, 1, ++seed, grid);
    benchmark::DoNotOptimize(pts.back().sin_theta);
  }
}
BENCHMARK(BM_McRepetition)->Arg(500)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
