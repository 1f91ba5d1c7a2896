#include <benchmark/benchmark.h>

#include "lamod/quandle.hpp"

using namespace lamod;

static void BM_EnumerateModules(benchmark::State& state) {
  i64 p = state.range(0);
  int n = static_cast<int>(state.range(1));
  for (auto _ : state) {
    ClassificationReport rep = enumerate_modules(p, n);
    benchmark::DoNotOptimize(rep.grand_total);
  }
}
BENCHMARK(BM_EnumerateModules)->Args({2, 4})->Args({3, 4})->Args({5, 4})
    ->Unit(benchmark::kMillisecond);

static void BM_EnumerateQuandles(benchmark::State& state) {
  i64 p = state.range(0);
  int n = static_cast<int>(state.range(1));
  for (auto _ : state) {
    auto qs = enumerate_quandles(p, n);
    benchmark::DoNotOptimize(qs.size());
  }
}
BENCHMARK(BM_EnumerateQuandles)->Args({2, 4})->Args({3, 3})->Unit(benchmark::kMillisecond);

static void BM_UnitEnumeration(benchmark::State& state) {
  GroupShape s = GroupShape::make(2, {{1, 4}});
  for (auto _ : state) {
    i64 count = 0;
    for_each_unit(s, [&](const StructuredMatrix&) {
      ++count;
      return true;
    });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_UnitEnumeration)->Unit(benchmark::kMillisecond);

static void BM_ConjugacyOracle(benchmark::State& state) {
  GroupShape s = GroupShape::make(2, {{2, 1}, {1, 2}});
  StructuredMatrix a = StructuredMatrix::make(s, {1, 0, 0, 1, 1, 0, 0, 0, 1});
  StructuredMatrix b = StructuredMatrix::make(s, {3, 0, 0, 1, 1, 0, 1, 0, 1});
  for (auto _ : state) {
    auto w = are_conjugate_oracle(a, b);
    benchmark::DoNotOptimize(w.has_value());
  }
}
BENCHMARK(BM_ConjugacyOracle)->Unit(benchmark::kMillisecond);

static void BM_Extend(benchmark::State& state) {
  GroupShape s = GroupShape::make(2, {{1, 2}});
  LambdaModule n = LambdaModule::make(s, StructuredMatrix::identity(s));
  for (auto _ : state) {
    ExtensionResult e = extend(n);
    benchmark::DoNotOptimize(e.extended.order());
  }
}
BENCHMARK(BM_Extend)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
