#include <benchmark/benchmark.h>

#include "crsp/campaign.hpp"
#include "crsp/optimizer.hpp"

namespace {

const crsp::CanonicalCoefficients kChannel{{0.5, 0.3, 0.4, 0.2, 0.6782329983125268}, 1.1};

void BM_SweepSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(crsp::sweep_serial(kChannel, n, 2 * n - 1));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(crsp::sweep(kChannel, n, 2 * n - 1));
}

void BM_Maximize(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(crsp::maximize(kChannel));
}

void BM_RunCrsp2(benchmark::State& state) {
  const crsp::TargetTwoQubit target{{0.5, 0.0}, {0.0, 0.5}, {0.5, 0.0}, {0.5, 0.0}};
  for (auto _ : state) benchmark::DoNotOptimize(crsp::run_crsp_two(kChannel, {1.0, 2.0}, target));
}

crsp::CampaignConfig campaign(std::size_t trials) {
  crsp::CampaignConfig c;
  c.trials = trials;
  c.protocol = crsp::ProtocolKind::Crsp2;
  return c;
}

void BM_CampaignSerial(benchmark::State& state) {
  const auto cfg = campaign(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(crsp::run_campaign_serial(cfg));
}

void BM_CampaignParallel(benchmark::State& state) {
  const auto cfg = campaign(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(crsp::run_campaign(cfg));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(19)->Arg(181);
BENCHMARK(BM_SweepParallel)->Arg(19)->Arg(181);
BENCHMARK(BM_Maximize);
BENCHMARK(BM_RunCrsp2);
BENCHMARK(BM_CampaignSerial)->Arg(200);
BENCHMARK(BM_CampaignParallel)->Arg(200);

BENCHMARK_MAIN();
