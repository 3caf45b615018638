#include <benchmark/benchmark.h>

#include "dtnreward/mobility.hpp"
#include "dtnreward/scenarios.hpp"
#include "dtnreward/simulation.hpp"

using namespace dtnreward;

// One block of messages through the full quote/race loop.
static void BM_SimulateBlock(benchmark::State& state) {
  ExperimentConfig c;
  c.relays = state.range(1) ? scenarios::heterogeneous_mixed() : scenarios::heterogeneous_exponential();
  c.costs = scenarios::reference_costs();
  c.setting = kAllSettings[state.range(0)];
  c.messages = 1000;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    c.seed = ++seed;
    benchmark::DoNotOptimize(run(c).mean_payment);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * c.messages));
  state.SetLabel(std::string(to_string(c.setting)) + (state.range(1) ? "/mixed" : "/exponential"));
}
BENCHMARK(BM_SimulateBlock)->ArgsProduct({{0, 1, 2, 3}, {0, 1}})->Unit(benchmark::kMillisecond);

static void BM_Encounter(benchmark::State& state) {
  const RelaySet relays = state.range(0) ? scenarios::heterogeneous_mixed() : scenarios::heterogeneous_exponential();
  EncounterSynthesizer synth(relays);
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(synth.next(rng).log.time(0));
}
BENCHMARK(BM_Encounter)->Arg(0)->Arg(1);

BENCHMARK_MAIN();
