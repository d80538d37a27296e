#include <benchmark/benchmark.h>

#include "hopfq/fixtures.hpp"
#include "hopfq/verifier.hpp"

using namespace hopfq;

namespace {

struct Built {
  CycContextPtr ctx;
  QuiverPtr quiver;
  ZnAction action;
  ActionSpec spec;
};

Built build_fixture(const std::string& name, int n) {
  auto files = fixtures::files(name);
  Built out;
  out.ctx = make_context(n);
  out.quiver = parse_quiver_json(files.at("quiver.json"));
  out.action = parse_action_json(out.ctx, *out.quiver, files.at("action.json"));
  TaftParams params =
      parse_params_json(out.ctx, *out.quiver, out.action, files.at("params.json"));
  out.spec = build_action(out.ctx, out.quiver, out.action, params).first;
  return out;
}

}  // namespace

static void EnumeratePaths(benchmark::State& state) {
  auto b = build_fixture("ex-7.8", 3);
  for (auto _ : state) {
    auto paths = enumerate_paths(*b.quiver, (int)state.range(0));
    benchmark::DoNotOptimize(paths);
  }
}
BENCHMARK(EnumeratePaths)->Arg(2)->Arg(4)->Arg(6);

static void ExtendOperators(benchmark::State& state) {
  auto b = build_fixture("ex-7.8", 3);
  for (auto _ : state) {
    OperatorTable table = extend_operators(b.spec, (int)state.range(0));
    benchmark::DoNotOptimize(table);
  }
}
BENCHMARK(ExtendOperators)->Arg(2)->Arg(4)->Arg(6);

static void VerifyPipeline(benchmark::State& state) {
  auto b = build_fixture("sweedler-VI", 2);
  for (auto _ : state) {
    auto rep = verify_all(b.spec, (int)state.range(0));
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(VerifyPipeline)->Arg(2)->Arg(4)->Arg(6);

static void ParametrizeAndSample(benchmark::State& state) {
  auto b = build_fixture("ex-7.7", 2);
  for (auto _ : state) {
    auto report = parametrize(b.ctx, b.quiver, b.action);
    TaftParams p = sample_params(b.ctx, b.quiver, b.action, report, 42);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(ParametrizeAndSample);

BENCHMARK_MAIN();
