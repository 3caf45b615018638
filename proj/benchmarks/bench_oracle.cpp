#include <benchmark/benchmark.h>

#include "dtnreward/oracle.hpp"
#include "dtnreward/rng.hpp"
#include "dtnreward/validation.hpp"

using namespace dtnreward;

static void BM_OracleSetting(benchmark::State& state) {
  Rng rng(3);
  const auto inst = random_instance(4, rng);
  const auto setting = kAllSettings[state.range(0)];
  const Knowledge k = Knowledge::from_log(setting, inst.log, 3);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(oracle_setting(k, inst.relays, kOracleBatch, ++seed).wins);
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * kOracleBatch));
  state.SetLabel(std::string(to_string(setting)));
}
BENCHMARK(BM_OracleSetting)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

static void BM_OracleActual(benchmark::State& state) {
  Rng rng(4);
  const auto inst = random_instance(static_cast<std::size_t>(state.range(0)), rng);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(oracle_actual(inst.log, inst.relays, 1, kOracleBatch, ++seed).wins);
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * kOracleBatch));
}
BENCHMARK(BM_OracleActual)->Arg(2)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
