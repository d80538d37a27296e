#include <benchmark/benchmark.h>

#include "hopfq/cyclo.hpp"
#include "hopfq/oracle.hpp"

using namespace hopfq;

static void ScalarMultiply(benchmark::State& state) {
  auto ctx = make_context((int)state.range(0));
  CycScalar a = parse_scalar(ctx, "1/2*z^2 - 3*z + 7/5");
  CycScalar b = parse_scalar(ctx, "z + 2/3");
  for (auto _ : state) {
    CycScalar c = a * b;
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(ScalarMultiply)->Arg(2)->Arg(4)->Arg(6)->Arg(12);

static void ScalarInverse(benchmark::State& state) {
  auto ctx = make_context((int)state.range(0));
  CycScalar a = parse_scalar(ctx, "1/2*z^2 - 3*z + 7/5");
  for (auto _ : state) {
    CycScalar c = a.inverse();
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(ScalarInverse)->Arg(2)->Arg(4)->Arg(6)->Arg(12);

static void HVanishingGrid(benchmark::State& state) {
  int n = (int)state.range(0);
  auto ctx = make_context(n);
  CycScalar zt = zeta(ctx);
  for (auto _ : state) {
    for (int a = 1; a <= 2 * n; ++a) {
      for (int b = 1; b <= 2 * n; ++b) {
        if ((a + b) % n != 0) continue;
        std::vector<CycScalar> vals;
        for (int l = 0; l <= b; ++l) vals.push_back(zt.pow(l));
        benchmark::DoNotOptimize(oracle::h_complete(ctx, a, vals));
      }
    }
  }
}
BENCHMARK(HVanishingGrid)->Arg(2)->Arg(4)->Arg(6);

static void QBinomial(benchmark::State& state) {
  auto ctx = make_context(6);
  CycScalar zt = zeta(ctx);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::q_binomial(ctx, 18, 9, zt));
  }
}
BENCHMARK(QBinomial);

BENCHMARK_MAIN();
