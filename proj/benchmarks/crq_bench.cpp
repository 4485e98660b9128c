#include "crq/analytics.hpp"
#include "crq/optimizer.hpp"
#include "crq/oracle.hpp"
#include "crq/simulator.hpp"

#include <benchmark/benchmark.h>

namespace {

const auto kCh = crq::ChannelProfile::make(0.3, 0.8, 0.4);
const auto kPol = crq::Policy::make(0.5, 1.0);
const auto kPt = crq::OperatingPoint::make(0.1, 0.1);

void BM_Simulate(benchmark::State& state) {
  crq::Scenario sc{.channel = kCh,
                   .point = kPt,
                   .policy = kPol,
                   .slots = static_cast<std::uint64_t>(state.range(0)),
                   .warmup_slots = 1'000,
                   .seed = 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(crq::simulate(sc));
    ++sc.seed;
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Simulate)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_OracleSolve(benchmark::State& state) {
  crq::oracle::ChainSpec spec{.channel = kCh,
                              .policy = kPol,
                              .point = kPt,
                              .truncation = static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(crq::oracle::solve_stationary(spec));
}
BENCHMARK(BM_OracleSolve)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_BuildTransitions(benchmark::State& state) {
  crq::oracle::ChainSpec spec{.channel = kCh, .policy = kPol, .point = kPt, .truncation = 400};
  for (auto _ : state) benchmark::DoNotOptimize(crq::oracle::build_transitions(spec));
}
BENCHMARK(BM_BuildTransitions)->Unit(benchmark::kMillisecond);

void BM_Evaluate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(crq::analytics::evaluate(kCh, kPol, kPt));
}
BENCHMARK(BM_Evaluate);

void BM_MinimizePrimaryDelay(benchmark::State& state) {
  const auto pt = crq::OperatingPoint::make(0.1, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(crq::optimizer::minimize_primary_delay(kCh, pt));
}
BENCHMARK(BM_MinimizePrimaryDelay);

}  // namespace
BENCHMARK_MAIN();
