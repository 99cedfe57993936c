#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "sovplan/error.hpp"
#include "sovplan/heuristics.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace sovplan;
using namespace fixtures;

namespace {

// Betweenness by enumerating every simple path and keeping the cheapest.
std::vector<double> brute_betweenness(const Topology& t, const FlowSet& flows) {
  std::vector<double> out(t.num_nodes(), 0.0);
  for (const Flow& f : flows) {
    auto all = oracle::all_simple_paths(t, f.source, f.target);
    if (all.empty()) continue;
    double best = all.front().cost;
    for (const auto& p : all) best = std::min(best, p.cost);
    std::vector<double> through(t.num_nodes(), 0.0);
    double count = 0;
    for (const auto& p : all) {
      if (std::abs(p.cost - best) > 1e-9) continue;
      count += 1;
      for (std::size_t i = 1; i + 1 < p.nodes.size(); ++i) through[p.nodes[i]] += 1;
    }
    for (std::size_t v = 0; v < out.size(); ++v) out[v] += through[v] / count;
  }
  return out;
}

std::vector<std::vector<NodeId>> classes_of(const Topology& t, CentralityKind kind, std::uint32_t m) {
  return round_robin_assign(centrality_ranking(t, kind, enumerate_flows(t)), m).classes();
}

}  // namespace

TEST_CASE("centrality kind names round-trip") {
  for (CentralityKind k : kAllCentralityKinds) CHECK(parse_centrality_kind(to_string(k)) == k);
  CHECK(to_string(CentralityKind::Betweenness) == "bwc");
  CHECK_FALSE(parse_centrality_kind("pagerank").has_value());
}

TEST_CASE("nodal degree worked example") {
  Topology g = sample_network();
  CentralityRanking r = centrality_ranking(g, CentralityKind::NodalDegree, enumerate_flows(g));
  CHECK(r.values == std::vector<double>{4, 3, 3, 2, 2, 3, 2, 3});
  CHECK(r.order == std::vector<NodeId>{S, A, B, E, T, C, D, F});

  CHECK(classes_of(g, CentralityKind::NodalDegree, 2) ==
        std::vector<std::vector<NodeId>>{{S, B, D, T}, {A, C, E, F}});
  CHECK(classes_of(g, CentralityKind::NodalDegree, 3) ==
        std::vector<std::vector<NodeId>>{{S, D, E}, {A, F, T}, {B, C}});
}

TEST_CASE("betweenness matches path enumeration") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    Topology t = random_connected(rng, 4 + trial % 5, 0.4);
    FlowSet flows = enumerate_flows(t);
    auto expected = brute_betweenness(t, flows);
    CentralityRanking r = centrality_ranking(t, CentralityKind::Betweenness, flows);
    for (std::size_t v = 0; v < expected.size(); ++v) CHECK(r.values[v] == doctest::Approx(expected[v]));
  }
}

TEST_CASE("betweenness only counts listed flows") {
  Topology g = sample_network();
  FlowSet one({Flow(S, T)});
  CentralityRanking r = centrality_ranking(g, CentralityKind::Betweenness, one);
  // cheapest S-T paths: S-A-D-T, S-B-E-T, S-C-E-T, S-F-T has 2 hops and wins
  CHECK(r.values[F] == doctest::Approx(1.0));
  CHECK(r.values[A] == doctest::Approx(0.0));
  CHECK_THROWS_AS(centrality_ranking(g, CentralityKind::Betweenness, FlowSet{}), InputError);
}

TEST_CASE("closeness") {
  Topology g = sample_network();
  CentralityRanking r = centrality_ranking(g, CentralityKind::Closeness, enumerate_flows(g));
  // S reaches A,B,C,F at 1, D,E,T at 2
  CHECK(r.values[S] == doctest::Approx(7.0 / 10.0));
  CHECK(r.order.front() == S);

  Topology split("split", 4, {{0, 1}, {2, 3}});
  CHECK_THROWS_AS(centrality_ranking(split, CentralityKind::Closeness, enumerate_flows(split)), InputError);
}

TEST_CASE("symmetric topologies give equal values and id order") {
  for (const Topology& t : {generate_ring(9), generate_complete(6)}) {
    for (CentralityKind kind : kAllCentralityKinds) {
      CentralityRanking r = centrality_ranking(t, kind, enumerate_flows(t));
      for (double v : r.values) CHECK(v == doctest::Approx(r.values.front()));
      for (std::size_t i = 0; i < r.order.size(); ++i) CHECK(r.order[i] == i);
    }
  }
}

TEST_CASE("round robin balances class sizes") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    Topology t = random_connected(rng, 5 + trial % 7, 0.3);
    for (CentralityKind kind : kAllCentralityKinds) {
      CentralityRanking r = centrality_ranking(t, kind, enumerate_flows(t));
      CHECK(std::is_permutation(r.order.begin(), r.order.end(), std::vector<NodeId>(r.order).begin()));
      for (std::size_t i = 1; i < r.order.size(); ++i) CHECK(r.values[r.order[i - 1]] >= r.values[r.order[i]] - 1e-9);
      for (std::uint32_t m = 1; m <= 5; ++m) {
        Assignment a = round_robin_assign(r, m);
        std::size_t lo = t.num_nodes(), hi = 0;
        for (const auto& c : a.classes()) {
          lo = std::min(lo, c.size());
          hi = std::max(hi, c.size());
        }
        CHECK(hi - lo <= 1);
        for (std::size_t i = 0; i < r.order.size(); ++i) CHECK(a[r.order[i]] == i % m);
      }
    }
  }
}
