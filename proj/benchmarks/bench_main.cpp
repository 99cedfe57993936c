#include <random>

#include <benchmark/benchmark.h>

#include "sovplan/metric.hpp"
#include "sovplan/paths.hpp"
#include "sovplan/solver.hpp"

using namespace sovplan;

namespace {

// Spanning tree plus extra edges, about as dense as a national backbone.
Topology backbone_like(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  for (NodeId v = 1; v < n; ++v) edges.push_back({std::uniform_int_distribution<NodeId>(0, v - 1)(rng), v});
  std::bernoulli_distribution coin(0.12);
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) {
      bool present = false;
      for (const Edge& e : edges) present = present || (e.a == a && e.b == b) || (e.a == b && e.b == a);
      if (!present && coin(rng)) edges.push_back({a, b});
    }
  }
  return Topology("backbone" + std::to_string(n), n, std::move(edges));
}

Assignment striped(std::size_t n, std::uint32_t m) {
  std::vector<ManufacturerId> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<ManufacturerId>(i % m);
  return Assignment(std::move(v), m);
}

void BM_KShortestPaths(benchmark::State& state) {
  Topology t = backbone_like(static_cast<std::size_t>(state.range(0)), 1);
  FlowSet flows = enumerate_flows(t);
  const auto k = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(k_shortest_paths(t, flows, k));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(flows.size()));
}
BENCHMARK(BM_KShortestPaths)->Args({11, 2})->Args({11, 10})->Args({25, 10})->Unit(benchmark::kMicrosecond);

void BM_PsdScore(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Topology t = backbone_like(n, 2);
  FlowSet flows = enumerate_flows(t);
  auto path_sets = k_shortest_paths(t, flows, static_cast<std::size_t>(state.range(1)));
  Assignment a = striped(n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(psd_score(path_sets, a));
}
BENCHMARK(BM_PsdScore)->Args({11, 4})->Args({11, 10})->Args({25, 10})->Unit(benchmark::kMicrosecond);

void BM_SolveExact(benchmark::State& state) {
  Topology t = backbone_like(11, 3);
  Instance inst = build_instance(t, enumerate_flows(t), static_cast<std::uint32_t>(state.range(0)),
                                 static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) {
    OptimizationResult r = solve_exact(inst);
    state.counters["nodes"] = static_cast<double>(r.stats.nodes_explored);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_SolveExact)->Args({2, 4})->Args({3, 4})->Args({3, 10})->Unit(benchmark::kMillisecond);

void BM_SolveLocal(benchmark::State& state) {
  Topology t = backbone_like(static_cast<std::size_t>(state.range(0)), 4);
  Instance inst = build_instance(t, enumerate_flows(t), 4, 6);
  LocalSearchParams params;
  params.restarts = 8;
  params.seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(solve_local(inst, params));
}
BENCHMARK(BM_SolveLocal)->Arg(11)->Arg(25)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
