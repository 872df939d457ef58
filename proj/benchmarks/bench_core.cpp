#include <benchmark/benchmark.h>

#include "flockspec/integrator.hpp"
#include "flockspec/operators.hpp"
#include "flockspec/scenarios.hpp"

using namespace flockspec;

namespace {

FlowState bench_state(int dim, int n) {
  SimConfig c;
  c.dim = dim;
  c.N = n;
  c.alpha = 1.5;
  c.T = 0.0;
  c.seed = 3;
  c.scenario.name = "rand_smooth";
  return make_scenario(c);
}

void BM_transform_roundtrip(benchmark::State& state) {
  FlowState s = bench_state(static_cast<int>(state.range(0)),
                            static_cast<int>(state.range(1)));
  for (auto _ : state)
    benchmark::DoNotOptimize(inverse_transform(forward_transform(s.rho)));
}

void BM_fractional_laplacian(benchmark::State& state) {
  FlowState s = bench_state(static_cast<int>(state.range(0)),
                            static_cast<int>(state.range(1)));
  for (auto _ : state)
    benchmark::DoNotOptimize(fractional_laplacian(s.rho, 1.5));
}

void BM_rhs(benchmark::State& state) {
  FlowState s = bench_state(static_cast<int>(state.range(0)),
                            static_cast<int>(state.range(1)));
  const FlowParams p{1.5, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(rhs(s, p));
}

void BM_step_ssprk3(benchmark::State& state) {
  FlowState s = bench_state(static_cast<int>(state.range(0)),
                            static_cast<int>(state.range(1)));
  const FlowParams p{1.5, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(step_ssprk3(s, p, 1e-3));
}

}  // namespace

BENCHMARK(BM_transform_roundtrip)->Args({1, 256})->Args({1, 1024})->Args({2, 64})->Args({2, 128});
BENCHMARK(BM_fractional_laplacian)->Args({1, 256})->Args({2, 64});
BENCHMARK(BM_rhs)->Args({1, 256})->Args({1, 1024})->Args({2, 64});
BENCHMARK(BM_step_ssprk3)->Args({1, 256})->Args({2, 64});

BENCHMARK_MAIN();
