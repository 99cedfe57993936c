#include "sovplan/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "sovplan/error.hpp"

namespace sovplan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct ShortestPaths {
  std::vector<double> dist;
  std::vector<double> count;  // number of cheapest paths from the source
};

bool same_cost(double x, double y) {
  return std::fabs(x - y) <= 1e-9 * std::max({1.0, std::fabs(x), std::fabs(y)});
}

ShortestPaths dijkstra_counts(const Topology& topo, NodeId source) {
  const std::size_t n = topo.num_nodes();
  ShortestPaths sp{std::vector<double>(n, kInf), std::vector<double>(n, 0.0)};
  std::vector<bool> settled(n, false);
  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  sp.dist[source] = 0.0;
  sp.count[source] = 1.0;
  pq.emplace(0.0, source);
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (settled[u]) continue;
    settled[u] = true;
    for (const Neighbor& nb : topo.neighbors(u)) {
      if (settled[nb.node]) continue;
      double nd = d + nb.weight;
      if (sp.dist[nb.node] != kInf && same_cost(nd, sp.dist[nb.node])) {
        sp.count[nb.node] += sp.count[u];
      } else if (nd < sp.dist[nb.node]) {
        sp.dist[nb.node] = nd;
        sp.count[nb.node] = sp.count[u];
        pq.emplace(nd, nb.node);
      }
    }
  }
  return sp;
}

std::vector<ShortestPaths> all_pairs(const Topology& topo) {
  std::vector<ShortestPaths> out;
  out.reserve(topo.num_nodes());
  for (NodeId s = 0; s < topo.num_nodes(); ++s) out.push_back(dijkstra_counts(topo, s));
  return out;
}

std::vector<double> betweenness(const Topology& topo, const FlowSet& flows) {
  if (flows.empty()) throw InputError("betweenness: no flows to measure against");
  const auto sp = all_pairs(topo);
  std::vector<double> value(topo.num_nodes(), 0.0);
  for (const Flow& f : flows) {
    const auto& from_s = sp[f.source];
    const double d_st = from_s.dist[f.target];
    if (d_st == kInf) continue;
    const double sigma_st = from_s.count[f.target];
    for (NodeId v = 0; v < topo.num_nodes(); ++v) {
      if (v == f.source || v == f.target) continue;
      const double d_sv = from_s.dist[v];
      const double d_vt = sp[v].dist[f.target];
      if (d_sv == kInf || d_vt == kInf || !same_cost(d_sv + d_vt, d_st)) continue;
      value[v] += from_s.count[v] * sp[v].count[f.target] / sigma_st;
    }
  }
  return value;
}

std::vector<double> closeness(const Topology& topo) {
  const std::size_t n = topo.num_nodes();
  std::vector<double> value(n, 0.0);
  if (n < 2) return value;
  for (NodeId s = 0; s < n; ++s) {
    const auto sp = dijkstra_counts(topo, s);
    double total = 0.0;
    for (NodeId t = 0; t < n; ++t) {
      if (sp.dist[t] == kInf) {
        throw InputError("closeness: topology is disconnected (no path " + std::to_string(s) + " -> " +
                         std::to_string(t) + ")");
      }
      total += sp.dist[t];
    }
    value[s] = static_cast<double>(n - 1) / total;
  }
  return value;
}

}  // namespace

std::string_view to_string(CentralityKind kind) {
  switch (kind) {
    case CentralityKind::NodalDegree:
      return "nd";
    case CentralityKind::Betweenness:
      return "bwc";
    case CentralityKind::Closeness:
      return "cc";
  }
  return "?";
}

std::optional<CentralityKind> parse_centrality_kind(std::string_view text) {
  for (CentralityKind k : kAllCentralityKinds) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

CentralityRanking centrality_ranking(const Topology& topology, CentralityKind kind, const FlowSet& flows) {
  CentralityRanking ranking;
  ranking.kind = kind;
  switch (kind) {
    case CentralityKind::NodalDegree:
      ranking.values.resize(topology.num_nodes());
      for (NodeId n = 0; n < topology.num_nodes(); ++n) ranking.values[n] = static_cast<double>(topology.degree(n));
      break;
    case CentralityKind::Betweenness:
      ranking.values = betweenness(topology, flows);
      break;
    case CentralityKind::Closeness:
      ranking.values = closeness(topology);
      break;
  }

  // Symmetric nodes can differ in the last bits depending on summation
  // order; compare on a 1e-9 grid so they tie and fall back to node id.
  std::vector<double> key(ranking.values.size());
  std::transform(ranking.values.begin(), ranking.values.end(), key.begin(),
                 [](double v) { return std::round(v * 1e9); });
  ranking.order.resize(topology.num_nodes());
  std::iota(ranking.order.begin(), ranking.order.end(), NodeId{0});
  std::stable_sort(ranking.order.begin(), ranking.order.end(), [&](NodeId a, NodeId b) { return key[a] > key[b]; });
  return ranking;
}

Assignment round_robin_assign(const CentralityRanking& ranking, std::uint32_t num_manufacturers) {
  if (num_manufacturers < 1) throw InputError("round robin: need at least one manufacturer");
  std::vector<ManufacturerId> by_node(ranking.order.size(), 0);
  for (std::size_t i = 0; i < ranking.order.size(); ++i) {
    by_node.at(ranking.order[i]) = static_cast<ManufacturerId>(i % num_manufacturers);
  }
  return Assignment(std::move(by_node), num_manufacturers);
}

}  // namespace sovplan
