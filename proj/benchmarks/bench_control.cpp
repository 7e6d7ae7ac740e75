#include <benchmark/benchmark.h>

#include "timewise/control.hpp"
#include "timewise/scenario.hpp"
#include "timewise/value.hpp"

namespace {

using namespace timewise;

void BM_ObjectValue(benchmark::State& state) {
  const ValueContext ctx = builtin_scenario("icu-sharp").context;
  int k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(object_value(ctx, k / 100.0));
    k = (k + 1) % 101;
  }
}
BENCHMARK(BM_ObjectValue);

void BM_SelectStrategy(benchmark::State& state) {
  const Scenario s = builtin_scenario("icu-sharp");
  const auto grid = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(select_strategy(s.catalog, s.context, s.horizon, grid).v_c_max);
}
BENCHMARK(BM_SelectStrategy)->Arg(128)->Arg(512)->Arg(2048);

}  // namespace
