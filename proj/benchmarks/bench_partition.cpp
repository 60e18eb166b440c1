#include <benchmark/benchmark.h>

#include "julienne/adl.hpp"
#include "julienne/bench.hpp"
#include "julienne/burst_cost.hpp"
#include "julienne/partitioner.hpp"

using namespace julienne;

namespace {

const Application& thermal() {
  static const Application app = bench::gen_headcount(bench::HeadcountVariant::thermal).app;
  return app;
}

const Energy kQMax = Energy::from_microjoules(132000);

void BM_ParseThermalAdl(benchmark::State& state) {
  const std::string text = bench::gen_headcount(bench::HeadcountVariant::thermal).adl;
  for (auto _ : state) benchmark::DoNotOptimize(adl::parse(text));
}
BENCHMARK(BM_ParseThermalAdl)->Unit(benchmark::kMillisecond);

void BM_CostTable(benchmark::State& state) {
  const unsigned jobs = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(CostTable::build(thermal(), kQMax, jobs));
}
BENCHMARK(BM_CostTable)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_OptimalPartition(benchmark::State& state) {
  const Energy q = Energy::from_microjoules(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(optimal_partition(thermal(), q));
}
BENCHMARK(BM_OptimalPartition)->Arg(132000)->Arg(500000)->Arg(2400000)->Unit(benchmark::kMillisecond);

void BM_QMin(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(q_min_value(thermal()));
}
BENCHMARK(BM_QMin)->Unit(benchmark::kMillisecond);

void BM_SyntheticChain(benchmark::State& state) {
  bench::SyntheticParams p;
  p.n_tasks = static_cast<std::uint32_t>(state.range(0));
  const Application app = bench::gen_synthetic(p);
  const Energy q = Energy::from_microjoules(10000);
  for (auto _ : state) benchmark::DoNotOptimize(optimal_partition(app, q));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SyntheticChain)->RangeMultiplier(4)->Range(256, 65536)->Complexity()->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
