#include <benchmark/benchmark.h>

#include "hypgeo/hyptrig.hpp"
#include "hypgeo/rng.hpp"

namespace {

void BM_PentagonFromLegs(benchmark::State& state) {
  hypgeo::Rng rng(7);
  for (auto _ : state) {
    const double a = rng.uniform(1.0, 3.0);
    const double b = rng.uniform(1.0, 3.0);
    auto p = hypgeo::trig::pentagon_from_legs(a, b);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_PentagonFromLegs);

void BM_HexagonSolve(benchmark::State& state) {
  hypgeo::Rng rng(7);
  for (auto _ : state) {
    const auto h = hypgeo::trig::hexagon_solve(rng.uniform(0.1, 4.0), rng.uniform(0.1, 4.0),
                                               rng.uniform(0.1, 4.0));
    benchmark::DoNotOptimize(h);
  }
}
BENCHMARK(BM_HexagonSolve);

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  return 0;
}
