#include <benchmark/benchmark.h>

#include <random>

#include "bmoment/cone.hpp"

using namespace bmoment;

namespace {

// Random constraint system with m rows in the given dimension.
std::pair<MatQ, VecQ> random_system(std::size_t m, std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  MatQ a(m, dim);
  VecQ b(m);
  for (std::size_t i = 0; i < m; ++i) {
    bool any = false;
    for (std::size_t j = 0; j < dim; ++j) {
      const long c = static_cast<long>(rng() % 7) - 3;
      a.at(i, j) = Rat(c);
      any = any || c != 0;
    }
    if (!any) a.at(i, 0) = 1;
    b[i] = Rat(static_cast<long>(rng() % 9) - 2, 1 + static_cast<long>(rng() % 3));
  }
  return {std::move(a), std::move(b)};
}

void VertexEnumerationBruteForce(benchmark::State& state) {
  const auto [a, b] = random_system(static_cast<std::size_t>(state.range(0)), 3, 99);
  for (auto _ : state) {
    auto verts = vertices_bruteforce(a, b);
    benchmark::DoNotOptimize(verts);
  }
}
BENCHMARK(VertexEnumerationBruteForce)->Arg(6)->Arg(10)->Arg(14);

void VertexEnumerationDoubleDescription(benchmark::State& state) {
  const auto [a, b] = random_system(static_cast<std::size_t>(state.range(0)), 3, 99);
  for (auto _ : state) {
    auto gens = dd_polyhedron(a, b);
    benchmark::DoNotOptimize(gens);
  }
}
BENCHMARK(VertexEnumerationDoubleDescription)->Arg(6)->Arg(10)->Arg(14);

}  // namespace
