#include <benchmark/benchmark.h>

#include "bmoment/models.hpp"

using namespace bmoment;

namespace {

ManifoldSpec spec_of(Family f) {
  ManifoldSpec spec;
  spec.family = f;
  return spec;
}

void MomentSampling(benchmark::State& state) {
  const auto m = make_manifold(spec_of(Family::ZeroWeightProduct));
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto set = image_sample(*m, n, 7);
    benchmark::DoNotOptimize(set);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(MomentSampling)->Range(1000, 100000);

void ConvexityMidpointTest(benchmark::State& state) {
  const auto m = make_manifold(spec_of(Family::ZeroWeightProduct));
  const auto samples = image_sample(*m, static_cast<std::size_t>(state.range(0)), 7).finite_moments();
  for (auto _ : state) {
    auto report = convexity_check(samples, 100, 0.05, 3);
    benchmark::DoNotOptimize(report);
  }
}
BENCHMARK(ConvexityMidpointTest)->Arg(10000)->Arg(100000);

void WeightEstimate(benchmark::State& state) {
  const auto m = make_manifold(spec_of(Family::BTorus));
  for (auto _ : state) {
    auto est = modular_weight_estimate(*m, "theta0");
    benchmark::DoNotOptimize(est);
  }
}
BENCHMARK(WeightEstimate);

}  // namespace

BENCHMARK_MAIN();
