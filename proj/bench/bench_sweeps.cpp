#include <benchmark/benchmark.h>

#include "conjsum/functions.hpp"
#include "conjsum/summability.hpp"
#include "conjsum/verify.hpp"

using namespace conjsum;

namespace {

// args: n_max, execution (0 serial, 1 parallel)
void BM_PointwiseSweep(benchmark::State& state) {
  const int n_max = static_cast<int>(state.range(0));
  const auto A = cesaro(n_max);
  const auto& f = *find_function("hat");
  SweepSpec spec;
  spec.theorem = TheoremId::kT1_5;
  for (int n = 4; n <= n_max; n *= 2) spec.n_list.push_back(n);
  spec.execution = state.range(1) ? Execution::kParallel : Execution::kSerial;
  for (auto _ : state) benchmark::DoNotOptimize(run_theorem(spec, f, A, A));
  state.SetLabel(state.range(1) ? "parallel" : "serial");
}
BENCHMARK(BM_PointwiseSweep)->ArgsProduct({{32, 128}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_NormSweep(benchmark::State& state) {
  const auto A = cesaro(64);
  const auto& f = *find_function("sawtooth");
  SweepSpec spec;
  spec.theorem = TheoremId::kT3;
  spec.n_list = {8, 32, 64};
  spec.execution = state.range(0) ? Execution::kParallel : Execution::kSerial;
  for (auto _ : state) benchmark::DoNotOptimize(run_theorem(spec, f, A, A));
  state.SetLabel(state.range(0) ? "parallel" : "serial");
}
BENCHMARK(BM_NormSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
