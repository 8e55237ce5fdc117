#include <benchmark/benchmark.h>

#include <vector>

#include "gsq/point_set.hpp"

namespace {

void BM_PointBlock(benchmark::State& state, gsq::PointSetKind kind) {
  gsq::PointSetSpec spec;
  spec.kind = kind;
  spec.dimension = static_cast<int>(state.range(0));
  spec.count = 4096;
  spec.scramble_seed = 7;
  gsq::PointSet ps(spec);
  std::vector<double> buf(spec.count * spec.dimension);
  for (auto _ : state) {
    ps.fill_block(0, spec.count, buf);
    benchmark::DoNotOptimize(buf.data());
  }
  state.SetItemsProcessed(state.iterations() * spec.count);
}

void BM_HaltonBlock(benchmark::State& state) { BM_PointBlock(state, gsq::PointSetKind::halton); }
void BM_SobolBlock(benchmark::State& state) { BM_PointBlock(state, gsq::PointSetKind::sobol); }
void BM_PseudorandomBlock(benchmark::State& state) {
  BM_PointBlock(state, gsq::PointSetKind::pseudorandom);
}

BENCHMARK(BM_HaltonBlock)->Arg(2)->Arg(40)->Arg(200);
BENCHMARK(BM_SobolBlock)->Arg(2)->Arg(40)->Arg(200);
BENCHMARK(BM_PseudorandomBlock)->Arg(2)->Arg(40)->Arg(200);

}  // namespace
