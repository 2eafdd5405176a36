#include <benchmark/benchmark.h>

#include <random>

#include "pfis/defuzz.hpp"
#include "pfis/inference.hpp"
#include "pfis/possibility.hpp"
#include "pfis/rule_parser.hpp"
#include "pfis/runner.hpp"

using namespace pfis;

namespace {

SystemConfig demo_config(int grid_points) {
  SystemConfig cfg;
  cfg.grid_points = grid_points;
  cfg.output_variable = "ozone";
  cfg.variables.emplace_back(
      "wind", 0.0, 20.0, grid_points,
      std::vector<Category>{
          {"calm", LinearSigmoid{2.95, 5.0, SigmoidDirection::Decreasing, 1.0}},
          {"breezy", LinearSigmoid{2.95, 5.0, SigmoidDirection::Increasing, 1.0}}});
  cfg.variables.emplace_back(
      "snow", 0.0, 60.0, grid_points,
      std::vector<Category>{
          {"deep", LinearSigmoid{10.5, 10.0, SigmoidDirection::Increasing, 1.0}}});
  cfg.variables.emplace_back(
      "ozone", 0.0, 140.0, grid_points,
      std::vector<Category>{
          {"background", Trapezoid{25, 45, 15, 15, 1.0}},
          {"elevated", Trapezoid{65, 85, 15, 15, 1.0}},
          {"extreme", LinearSigmoid{105, 20, SigmoidDirection::Increasing, 1.0}}});
  cfg.ruleset = parse_ruleset(
      "IF wind IS calm AND snow IS deep THEN ozone IS elevated\n"
      "IF wind IS breezy THEN ozone IS background\n",
      "ozone");
  return cfg;
}

void BM_EvalTrapezoid(benchmark::State& state) {
  const MembershipFunction mf{Trapezoid{50, 70, 10, 30, 0.9}};
  double x = 39.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mf.evaluate(x).value());
    x += 0.1;
    if (x > 105.0) x = 39.0;
  }
}
BENCHMARK(BM_EvalTrapezoid);

void BM_ParseRule(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        parse_rule("IF wind IS calm AND snow IS deep THEN ozone IS elevated"));
  }
}
BENCHMARK(BM_ParseRule);

void BM_Aggregate(benchmark::State& state) {
  const SystemConfig cfg = demo_config(static_cast<int>(state.range(0)));
  const std::vector<Activation> acts{
      {"r1", Degree(0.38), "elevated"},
      {"r2", Degree(0.23), "background"},
  };
  for (auto _ : state) {
    benchmark::DoNotOptimize(aggregate(acts, cfg.output()));
  }
}
BENCHMARK(BM_Aggregate)->Arg(51)->Arg(201)->Arg(801);

void BM_PercentileDefuzz(benchmark::State& state) {
  const SystemConfig cfg = demo_config(201);
  const auto dist = aggregate(
      {{"r1", Degree(0.38), "elevated"}, {"r2", Degree(0.23), "background"}}, cfg.output());
  const std::vector<double> ps{0.1, 0.5, 0.9};
  for (auto _ : state) {
    benchmark::DoNotOptimize(percentile_defuzz(dist, ps));
  }
}
BENCHMARK(BM_PercentileDefuzz);

void BM_RunSingle(benchmark::State& state) {
  const SystemConfig cfg = demo_config(static_cast<int>(state.range(0)));
  const Observation obs{{"wind", 1.6}, {"snow", 9.3}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_single(cfg, obs));
  }
}
BENCHMARK(BM_RunSingle)->Arg(51)->Arg(201);

void BM_RecordToJsonl(benchmark::State& state) {
  const SystemConfig cfg = demo_config(201);
  const RunRecord rec = run_single(cfg, {{"wind", 1.6}, {"snow", 9.3}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(record_to_jsonl(rec));
  }
}
BENCHMARK(BM_RecordToJsonl);

}  // namespace

BENCHMARK_MAIN();
