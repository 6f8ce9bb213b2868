#include <benchmark/benchmark.h>

#include "mest/estimators.hpp"
#include "mest/montecarlo.hpp"
#include "mest/theory.hpp"

namespace {

mest::PopulationParams consumption_income(int n) {
  mest::PopulationParams p;
  p.mu_y = 127;
  p.mu_x = 170;
  p.sigma2_y = 1278;
  p.sigma2_x = 3300;
  p.rho = 0.964;
  p.sigma2_u = 36;
  p.sigma2_v = 36;
  p.n = n;
  return p;
}

void BM_DrawReplication(benchmark::State& state) {
  const mest::PopulationModel model{consumption_income(static_cast<int>(state.range(0)))};
  std::uint64_t index = 0;
  for (auto _ : state) {
    auto draw = mest::draw_replication(model, 1, index++);
    benchmark::DoNotOptimize(draw);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DrawReplication)->Arg(10)->Arg(200);

void BM_RunSimulation(benchmark::State& state) {
  const mest::PopulationModel model{consumption_income(10)};
  mest::SimulationConfig config;
  config.estimator = mest::EstimatorId::TP;
  config.weight_policy = mest::WeightPolicy::OracleOptimal;
  config.replications = 10000;
  config.seed = 3;
  config.workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    auto result = mest::run_simulation(model, config);
    benchmark::DoNotOptimize(result);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(config.replications));
}
BENCHMARK(BM_RunSimulation)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ProposedPoint(benchmark::State& state) {
  mest::SampleSummary s{127.3, 168.2, 10};
  const mest::WeightPair w{0.999, 0.22};
  for (auto _ : state) {
    benchmark::DoNotOptimize(mest::proposed_point(s, 170.0, w));
    s.xbar += 1e-9;
  }
}
BENCHMARK(BM_ProposedPoint);

void BM_AnalyzeAll(benchmark::State& state) {
  const mest::PopulationParams p = consumption_income(10);
  for (auto _ : state) {
    for (mest::EstimatorId id : mest::kAllEstimators) {
      auto row = mest::analyze(id, p);
      benchmark::DoNotOptimize(row);
    }
  }
}
BENCHMARK(BM_AnalyzeAll);

}  // namespace
BENCHMARK_MAIN();
