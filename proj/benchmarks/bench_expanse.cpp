#include <random>

#include <benchmark/benchmark.h>

#include "expanse/expansion.hpp"
#include "expanse/grigorchuk.hpp"
#include "expanse/instances.hpp"
#include "expanse/topology.hpp"
#include "expanse/verify.hpp"

using namespace expanse;

static void BM_SupportOfTable(benchmark::State& state) {
  TableMap g({{"0", "00"}, {"10", "100"}, {"11", "101"}});
  for (auto _ : state) benchmark::DoNotOptimize(word_boxes(g.image()));
}
BENCHMARK(BM_SupportOfTable);

static void BM_GrigorchukIdentity(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(grig::is_identity("abadacabadacabadac"));
}
BENCHMARK(BM_GrigorchukIdentity);

static void BM_VContractions(benchmark::State& state) {
  ThompsonV v;
  std::mt19937_64 rng(1);
  Vertex u = random_vertex_of_height(v, rng, 2);
  for (auto _ : state) benchmark::DoNotOptimize(v.contractions(u));
}
BENCHMARK(BM_VContractions);

static void BM_DescendingLink(benchmark::State& state) {
  ThompsonV v;
  std::mt19937_64 rng(0);
  Vertex u = random_vertex_of_height(v, rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(descending_link(v, u).complex.dimension());
}
BENCHMARK(BM_DescendingLink)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_ReducedHomology(benchmark::State& state) {
  ThompsonV v;
  std::mt19937_64 rng(0);
  Complex k = descending_link(v, random_vertex_of_height(v, rng, 6)).complex;
  for (auto _ : state) benchmark::DoNotOptimize(reduced_homology(k, 1, false));
}
BENCHMARK(BM_ReducedHomology)->Unit(benchmark::kMillisecond);

static void BM_AscendingStar(benchmark::State& state) {
  auto set = make_instance(state.range(0) == 0 ? "v" : "2v");
  std::mt19937_64 rng(0);
  Vertex u = random_vertex_of_height(*set, rng, 2);
  for (auto _ : state) benchmark::DoNotOptimize(ascending_star(*set, u).vertices.size());
}
BENCHMARK(BM_AscendingStar)->Arg(0)->Arg(1);

static void BM_TemplateV(benchmark::State& state) {
  ThompsonV v;
  for (auto _ : state) benchmark::DoNotOptimize(check_template(v, 2, 5, 0));
}
BENCHMARK(BM_TemplateV)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
