#include <benchmark/benchmark.h>

#include "gdl/gauss_diagram.hpp"
#include "gdl/invariant.hpp"
#include "gdl/moves.hpp"
#include "gdl/pattern.hpp"

namespace {

using namespace gdl;

void BM_LambdaFamily(benchmark::State& state) {
  const GaussDiagram d = build_dln(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lambda(d));
  state.counters["arrows"] = static_cast<double>(d.num_arrows());
}
BENCHMARK(BM_LambdaFamily)->DenseRange(1, 8);

void BM_CanonicalForm(benchmark::State& state) {
  const GaussDiagram d = random_diagram(3, static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(canonical_code(d));
}
BENCHMARK(BM_CanonicalForm)->Arg(2)->Arg(6)->Arg(12);

void BM_EnumerateSites(benchmark::State& state) {
  const GaussDiagram d = build_dln(4);
  const auto kinds = all_move_kinds();
  for (auto _ : state) {
    std::size_t n = 0;
    for (MoveKind k : kinds) n += enumerate_sites(d, k).size();
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_EnumerateSites);

void BM_WalkStep(benchmark::State& state) {
  Rng rng(1);
  GaussDiagram d = build_dl();
  const auto kinds = all_move_kinds();
  for (auto _ : state) {
    MoveKind k = kinds[rng.below(kinds.size())];
    if (d.num_arrows() > 30 && k.direction == MoveDirection::Increasing) k.direction = MoveDirection::Decreasing;
    const auto sites = enumerate_sites(d, k);
    if (!sites.empty()) d = apply_move(d, k, sites[rng.below(sites.size())]);
    benchmark::DoNotOptimize(lambda(d));
  }
}
BENCHMARK(BM_WalkStep);

}  // namespace

BENCHMARK_MAIN();
