#include <benchmark/benchmark.h>

#include "arco/generators.hpp"

namespace {

void BM_AugmentedLagrangianEval(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  arco::LcqpInstance inst = arco::gen_lcqp(n, n / 2, n / 2, 0.1, 3);
  arco::ConstrainedProblem problem = inst.to_problem();
  arco::Vector lambda = arco::Vector::Ones(problem.m());
  arco::SmoothOracle oracle = arco::augmented_lagrangian_oracle(problem, lambda, 1.0);
  arco::Vector x = arco::Vector::Constant(n, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle(x).value);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_AugmentedLagrangianEval)->Arg(50)->Arg(200);

void BM_GenLcqp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(arco::gen_lcqp(n, n / 2, n / 2, 0.1, 11).M.sum());
  }
}
BENCHMARK(BM_GenLcqp)->Arg(50)->Arg(200);

}  // namespace
