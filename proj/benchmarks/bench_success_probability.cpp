#include <benchmark/benchmark.h>

#include "dtnreward/rng.hpp"
#include "dtnreward/success_probability.hpp"
#include "dtnreward/validation.hpp"

using namespace dtnreward;

namespace {

RandomInstance instance(std::size_t n) {
  Rng rng(split_seed(99, n));
  return random_instance(n, rng);
}

}  // namespace

static void BM_RaceTable(benchmark::State& state) {
  const auto inst = instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    RaceTable t(inst.relays, 0);
    benchmark::DoNotOptimize(t.win(0));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RaceTable)->DenseRange(2, 16, 2)->Complexity();

static void BM_Estimate(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto setting = kAllSettings[state.range(1)];
  const auto inst = instance(n);
  const SuccessModel model(inst.relays);
  const Knowledge k = Knowledge::from_log(setting, inst.log, (n + 1) / 2);
  for (auto _ : state) benchmark::DoNotOptimize(model.estimate(k).value);
  state.SetLabel(std::string(to_string(setting)));
}
BENCHMARK(BM_Estimate)->ArgsProduct({{4, 10, 16}, {0, 1, 2, 3}});

static void BM_Actual(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto inst = instance(n);
  for (auto _ : state) benchmark::DoNotOptimize(p_actual(inst.log, inst.relays, n / 2 + 1));
}
BENCHMARK(BM_Actual)->Arg(4)->Arg(10)->Arg(16);

BENCHMARK_MAIN();
