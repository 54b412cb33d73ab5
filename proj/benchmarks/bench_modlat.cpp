#include <benchmark/benchmark.h>

#include <random>

#include "modlat/classify.hpp"
#include "modlat/matlis.hpp"
#include "modlat/module.hpp"
#include "modlat/tower.hpp"
#include "modlat/zp.hpp"

using namespace modlat;

static void BM_HowellForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  Mat rows(n, Vec(n));
  for (auto& r : rows)
    for (auto& x : r) x = static_cast<Int>(rng() % 27);
  for (auto _ : state) benchmark::DoNotOptimize(zp::howell_form(rows, 3, 3));
}
BENCHMARK(BM_HowellForm)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

static void BM_EnumerateSubmodules(benchmark::State& state) {
  // (F_2[t]/t^d)^2: lattice size grows quickly with d.
  const FiniteRing R(truncated_polynomial_ring(2, {"t"}, static_cast<int>(state.range(0))));
  const auto M = direct_sum({regular_module(R), regular_module(R)});
  std::size_t n = 0;
  for (auto _ : state) n = enumerate_submodules(M).size();
  state.counters["submodules"] = static_cast<double>(n);
}
BENCHMARK(BM_EnumerateSubmodules)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

static void BM_EnumerateIdeals(benchmark::State& state) {
  const auto A = truncated_polynomial_ring(2, {"x", "y"}, static_cast<int>(state.range(0)));
  std::size_t n = 0;
  for (auto _ : state) n = enumerate_ideals(A).size();
  state.counters["ideals"] = static_cast<double>(n);
}
BENCHMARK(BM_EnumerateIdeals)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_HomModule(benchmark::State& state) {
  const FiniteRing R(truncated_polynomial_ring(2, {"x", "y"}, static_cast<int>(state.range(0))));
  const auto M = regular_module(R);
  const auto E = injective_hull(R);
  for (auto _ : state) benchmark::DoNotOptimize(hom_module(M, E));
}
BENCHMARK(BM_HomModule)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_DoubleDual(benchmark::State& state) {
  const FiniteRing R(cyclic_ring(3, static_cast<int>(state.range(0))));
  const auto M = direct_sum({regular_module(R), regular_module(R)});
  for (auto _ : state) benchmark::DoNotOptimize(double_dual_certificate(M));
}
BENCHMARK(BM_DoubleDual)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

static void BM_Classify(benchmark::State& state) {
  const FiniteRing R(truncated_polynomial_ring(2, {"x", "y"}, 3));
  const auto M = injective_hull(R);
  for (auto _ : state) benchmark::DoNotOptimize(classify(M).submodule_count);
}
BENCHMARK(BM_Classify)->Unit(benchmark::kMillisecond);

static void BM_IdealTree(benchmark::State& state) {
  const auto t = make_tower(parse_tower_spec("F_2[[x,y]]"));
  const int depth = static_cast<int>(state.range(0));
  std::size_t leaves = 0;
  for (auto _ : state) leaves = ideal_tree(t, depth).level_sizes().back();
  state.counters["leaves"] = static_cast<double>(leaves);
}
BENCHMARK(BM_IdealTree)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

static void BM_IdealTreeBrute(benchmark::State& state) {
  const auto t = make_tower(parse_tower_spec("F_2[[x,y]]"));
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ideal_tree_level_sizes_brute(t, depth));
}
BENCHMARK(BM_IdealTreeBrute)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
