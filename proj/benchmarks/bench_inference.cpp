#include <benchmark/benchmark.h>

#include <memory>

#include "timewise/engines.hpp"
#include "timewise/exact.hpp"
#include "timewise/problems.hpp"

namespace {

using namespace timewise;

Problem problem_of_size(std::int64_t nodes) {
  return random_problem({static_cast<std::size_t>(nodes), 3, 2, 2, false}, 11);
}

void BM_VariableElimination(benchmark::State& state) {
  const Problem p = problem_of_size(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(variable_elimination(p.net, p.evidence, p.query).probability);
}
BENCHMARK(BM_VariableElimination)->Arg(8)->Arg(16)->Arg(32);

void BM_JointEnumeration(benchmark::State& state) {
  const Problem p = problem_of_size(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(joint_enumeration(p.net, p.evidence, p.query).probability);
}
BENCHMARK(BM_JointEnumeration)->Arg(8)->Arg(16);

void BM_SamplerSteps(benchmark::State& state) {
  const Problem p = problem_of_size(16);
  const auto net = std::make_shared<const Network>(p.net);
  AnytimeState engine = make_logic_sampler(net, p.evidence, p.query, 1);
  for (auto _ : state) engine.advance(1000);
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_SamplerSteps);

// Each iteration restarts the propagator so the frontier stays comparable.
void BM_BoundSteps(benchmark::State& state) {
  const Problem p = problem_of_size(16);
  const auto net = std::make_shared<const Network>(p.net);
  for (auto _ : state) {
    AnytimeState engine = make_bound_propagator(net, p.evidence, p.query);
    engine.advance(static_cast<std::uint64_t>(state.range(0)));
    benchmark::DoNotOptimize(engine.estimate().mean);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BoundSteps)->Arg(64)->Arg(1024);

}  // namespace
