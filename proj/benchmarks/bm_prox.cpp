#include <benchmark/benchmark.h>

#include "arco/prox.hpp"
#include "arco/rng.hpp"

namespace {

arco::Vector random_vector(int n, std::uint64_t seed) {
  arco::RngStream rng(seed);
  arco::Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.normal();
  return v;
}

void BM_ProxL1(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  arco::Vector x = random_vector(n, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(arco::prox_l1(x, 0.5, 0.3));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_ProxL1)->Arg(100)->Arg(1000)->Arg(10000);

void BM_ProxBox(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  arco::Vector x = 3.0 * random_vector(n, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(arco::prox_box(x, -1.0, 1.0));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_ProxBox)->Arg(100)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
