#include <benchmark/benchmark.h>

#include "gsq/premium_flow.hpp"

namespace {

const gsq::BarrierPremium kPremium{2.0, 3.0, 0.001};

void BM_FlowLinearRegion(benchmark::State& state) {
  gsq::FlowEvaluator flow(kPremium);
  double t = 0.3, s = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(flow.value(t, s));
  }
}
BENCHMARK(BM_FlowLinearRegion);

void BM_FlowBlendTransit(benchmark::State& state) {
  gsq::FlowEvaluator flow(kPremium);
  // long enough to cross into the blend from a typical surplus level
  double t = 1.5, s = 1.2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(flow.value(t, s));
  }
}
BENCHMARK(BM_FlowBlendTransit);

void BM_FlowSensitivityPair(benchmark::State& state) {
  gsq::FlowEvaluator flow(kPremium);
  double t = 1.5, s = 2.99925;
  for (auto _ : state) {
    benchmark::DoNotOptimize(flow.sensitivity_first(t, s));
    benchmark::DoNotOptimize(flow.sensitivity_second(t, s));
  }
}
BENCHMARK(BM_FlowSensitivityPair);

void BM_FlowRungeKuttaReference(benchmark::State& state) {
  gsq::FlowEvaluator flow(kPremium);
  double t = 1.5, s = 1.2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(flow.flow_rk(t, s));
  }
}
BENCHMARK(BM_FlowRungeKuttaReference);

}  // namespace
