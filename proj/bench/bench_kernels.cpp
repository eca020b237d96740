// Serial reference vs OpenMP kernels on 690- and 40000-sample batches.

#include <benchmark/benchmark.h>

#include "fringefit/kernels.hpp"
#include "fringefit/simulator.hpp"

namespace {

using namespace fringefit;

BatchSpec spec(std::int64_t m) {
  BatchSpec s;
  s.params = {2.21, 6.33, 1.03, 4.83};
  s.sample_count = static_cast<std::size_t>(m);
  s.master_seed = 1;
  return s;
}

void BM_RunBatchSerial(benchmark::State& state) {
  const BatchSpec s = spec(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_batch_serial(s));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_RunBatchOmp(benchmark::State& state) {
  const BatchSpec s = spec(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_batch(s));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <Method M, bool Parallel>
void BM_Estimate(benchmark::State& state) {
  const auto samples = run_batch(spec(state.range(0)));
  for (auto _ : state) {
    if constexpr (Parallel)
      benchmark::DoNotOptimize(estimate_batch(samples, M));
    else
      benchmark::DoNotOptimize(estimate_batch_serial(samples, M));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_RunBatchSerial)->Arg(690)->Arg(40000);
BENCHMARK(BM_RunBatchOmp)->Arg(690)->Arg(40000);
BENCHMARK(BM_Estimate<Method::gauss_dft, false>)->Arg(690);
BENCHMARK(BM_Estimate<Method::gauss_dft, true>)->Arg(690);
BENCHMARK(BM_Estimate<Method::poisson_ml, false>)->Arg(690)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Estimate<Method::poisson_ml, true>)->Arg(690)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
