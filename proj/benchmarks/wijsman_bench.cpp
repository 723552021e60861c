#include <wijsman/closed_set.hpp>
#include <wijsman/constructions.hpp>
#include <wijsman/hyperspace.hpp>

#include <benchmark/benchmark.h>

using namespace wijsman;

static void BM_DyadicDist(benchmark::State& state) {
  const Index n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(dyadic_dist(n, n + 3));
}
BENCHMARK(BM_DyadicDist)->Arg(5)->Arg(50)->Arg(500);

static void BM_DistToTail(benchmark::State& state) {
  const auto set = finite_plus_tail({1, 3, 7}, 12);
  for (auto _ : state) benchmark::DoNotOptimize(dist_to_set(dyadic_nat(), nat(9), set));
}
BENCHMARK(BM_DistToTail);

static void BM_EnumerateDyadic(benchmark::State& state) {
  const Index bound = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_closed_sets(dyadic_nat(), bound, true));
  state.SetItemsProcessed(state.iterations() * enumeration_count(dyadic_nat(), bound, true));
}
BENCHMARK(BM_EnumerateDyadic)->Arg(8)->Arg(12);

static void BM_ProveDyadic(benchmark::State& state) {
  std::set<Index> e;
  for (Index k = 1; k <= static_cast<Index>(state.range(0)); k += 2) e.insert(k);
  for (auto _ : state) benchmark::DoNotOptimize(prove_dyadic_isolation(e));
}
BENCHMARK(BM_ProveDyadic)->Arg(1)->Arg(8)->Arg(32);

static void BM_DyadicOracle(benchmark::State& state) {
  const auto cert = dyadic_isolation_certificate({1, 3});
  const Index bound = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_unique_member(dyadic_nat(), cert, bound, true));
}
BENCHMARK(BM_DyadicOracle)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_IntervalSubbase(benchmark::State& state) {
  const auto spec = interval_copies(state.range(0));
  const auto grid = IntervalGrid::uniform(8);
  for (auto _ : state) benchmark::DoNotOptimize(verify_interval_copies_subbase(spec, grid));
}
BENCHMARK(BM_IntervalSubbase)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
