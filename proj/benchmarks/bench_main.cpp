#include <benchmark/benchmark.h>

#include <vector>

#include "cayley_ising/factor_type.hpp"
#include "cayley_ising/gibbs.hpp"
#include "cayley_ising/recursion.hpp"
#include "cayley_ising/root_count_oracle.hpp"

using namespace cayley_ising;

namespace {

const ModelParams kTI = ModelParams::from_thetas(5.0, 2.0);

void BM_Kernel(benchmark::State& state) {
  double x = 0.7;
  for (auto _ : state) {
    x = kernel(kTI, x, 1.3);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_Kernel);

void BM_SolveTI(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(solve_ti(kTI));
}
BENCHMARK(BM_SolveTI);

void BM_Enumerate(benchmark::State& state) {
  const auto field = FieldAssignment::constant(0.3);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(log_partition_enumerated(kTI, field, n));
}
BENCHMARK(BM_Enumerate)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_Contract(benchmark::State& state) {
  const auto field = FieldAssignment::constant(0.3);
  for (auto _ : state) benchmark::DoNotOptimize(log_partition_contracted(kTI, field, 10));
}
BENCHMARK(BM_Contract)->Unit(benchmark::kMicrosecond);

void BM_FindCommensurable(benchmark::State& state) {
  const std::vector<double> ratios{2.0, 3.0, 1.5};
  for (auto _ : state) benchmark::DoNotOptimize(find_commensurable(ratios, 1.2));
}
BENCHMARK(BM_FindCommensurable);

void BM_RootCountOracle(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(root_count_oracle(kTI));
}
BENCHMARK(BM_RootCountOracle)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
