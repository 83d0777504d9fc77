#include <benchmark/benchmark.h>

#include "arco/acg.hpp"
#include "arco/generators.hpp"

namespace {

void BM_AcgStepLasso(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  arco::LassoInstance inst = arco::gen_lasso(n, n / 2, 0.2, 0.5, 7);
  arco::CompositeProblem problem = inst.to_problem();
  arco::AcgState st = arco::acg_init(problem, inst.start(), problem.f.L(), 0.0);
  for (auto _ : state) {
    arco::acg_step(problem, st);
    benchmark::DoNotOptimize(st.psi_y);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_AcgStepLasso)->Arg(200)->Arg(1000);

}  // namespace
