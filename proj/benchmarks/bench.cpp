#include <benchmark/benchmark.h>

#include <random>

#include "hippo/complexity.hpp"
#include "hippo/measure.hpp"
#include "hippo/prefix_sets.hpp"
#include "hippo/randomness_tests.hpp"

using namespace hippo;

static void BM_EnumerateKm(benchmark::State& state) {
  int B = static_cast<int>(state.range(0));
  for (auto _ : state) {
    ComplexityTable t = enumerate_km({B, 17});
    benchmark::DoNotOptimize(t.entries().size());
  }
  state.SetComplexityN(1 << B);
}
BENCHMARK(BM_EnumerateKm)->Arg(10)->Arg(12)->Arg(14)->Arg(16)->Complexity();

static void BM_EnumerateKmParallel(benchmark::State& state) {
  for (auto _ : state) {
    ComplexityTable t = enumerate_km({16, 17}, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(t.entries().size());
  }
}
BENCHMARK(BM_EnumerateKmParallel)->Arg(1)->Arg(2)->Arg(4);

static void BM_HiddenSeedMass(benchmark::State& state) {
  HiddenSeedMeasure P("deadbeef");
  BitString x;
  std::mt19937_64 rng(5);
  for (long i = 0; i < state.range(0); ++i) x.push_back(rng() & 1);
  for (auto _ : state) benchmark::DoNotOptimize(P.mass(x));
}
BENCHMARK(BM_HiddenSeedMass)->Arg(64)->Arg(256)->Arg(1024);

static void BM_StreamingCover(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::vector<BitString> inputs;
  for (long i = 0; i < state.range(0); ++i) {
    int len = static_cast<int>(rng() % 21);
    BitString x;
    for (int b = 0; b < len; ++b) x.push_back(rng() & 1);
    inputs.push_back(x);
  }
  for (auto _ : state) {
    StreamingCover st;
    for (const auto& x : inputs) st.insert(x);
    benchmark::DoNotOptimize(st.accepted().size());
  }
}
BENCHMARK(BM_StreamingCover)->Arg(100)->Arg(1000)->Arg(10000);

static void BM_BuildMeasureTest(benchmark::State& state) {
  ComplexityTable table = enumerate_km({12, 13});
  BernoulliMeasure half(Dyadic(1, 1));
  for (auto _ : state) {
    TestFamily fam = build_measure_test(half, table, 4, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(fam.n_max());
  }
}
BENCHMARK(BM_BuildMeasureTest)->Arg(8)->Arg(10)->Arg(12);

BENCHMARK_MAIN();
