#include <benchmark/benchmark.h>

#include "etaforge/qexp.hpp"
#include "etaforge/search.hpp"

using namespace etaforge;

namespace {

void BM_enumerate_35_2(benchmark::State& state) {
  const Level level = factorize(35);
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate(level, 2).hits.size());
  }
}
BENCHMARK(BM_enumerate_35_2);

void BM_enumerate_385_4(benchmark::State& state) {
  const Level level = factorize(385);
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate(level, 4).hits.size());
  }
}
BENCHMARK(BM_enumerate_385_4)->Unit(benchmark::kMillisecond);

void BM_enumerate_5005_2_parallel(benchmark::State& state) {
  const Level level = factorize(5005);
  SearchConfig cfg(level);
  cfg.k = 2;
  cfg.workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate(cfg).hits.size());
  }
}
BENCHMARK(BM_enumerate_5005_2_parallel)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_cusp_matrix_5005(benchmark::State& state) {
  const Level level = factorize(5005);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cusp_matrix(level).entry(0, 0));
  }
}
BENCHMARK(BM_cusp_matrix_5005);

void BM_kronecker_batch(benchmark::State& state) {
  for (auto _ : state) {
    long acc = 0;
    for (long a = -300; a <= 300; ++a) {
      for (long m : {9907L, 104729L, -104729L}) {
        acc += kronecker(a, m);
      }
    }
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_kronecker_batch);

void BM_discriminant_series(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(eta_power_series(24, 512).coefficients.back());
  }
}
BENCHMARK(BM_discriminant_series)->Unit(benchmark::kMillisecond);

void BM_weak_witness_145_4(benchmark::State& state) {
  const Level level = factorize(145);
  for (auto _ : state) {
    benchmark::DoNotOptimize(weak_witness(level, 4).has_value());
  }
}
BENCHMARK(BM_weak_witness_145_4);

}  // namespace

BENCHMARK_MAIN();
