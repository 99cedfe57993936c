#include "sovplan/paths.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <queue>
#include <set>

#include "sovplan/error.hpp"

namespace sovplan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct EdgeKey {
  NodeId a;
  NodeId b;
  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

EdgeKey edge_key(NodeId u, NodeId v) { return u < v ? EdgeKey{u, v} : EdgeKey{v, u}; }

/// Restricted view of the topology used for one spur computation.
struct SearchMask {
  std::vector<bool> blocked_nodes;
  std::set<EdgeKey> blocked_edges;

  bool edge_open(NodeId u, NodeId v) const { return !blocked_edges.contains(edge_key(u, v)); }
};

bool nearly_equal(double x, double y) {
  return std::fabs(x - y) <= 1e-9 * std::max({1.0, std::fabs(x), std::fabs(y)});
}

/// Lexicographically smallest among the cheapest paths from `from` to `to`
/// in the masked graph. Distances to `to` come from a reverse Dijkstra; the
/// walk then takes the lowest-id neighbour that stays on a cheapest route.
std::optional<std::vector<NodeId>> cheapest_lex_path(const Topology& topo, NodeId from, NodeId to,
                                                     const SearchMask& mask) {
  const std::size_t n = topo.num_nodes();
  std::vector<double> dist(n, kInf);
  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[to] = 0.0;
  pq.emplace(0.0, to);
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    for (const Neighbor& nb : topo.neighbors(u)) {
      if (mask.blocked_nodes[nb.node] || !mask.edge_open(u, nb.node)) continue;
      double nd = d + nb.weight;
      if (nd < dist[nb.node]) {
        dist[nb.node] = nd;
        pq.emplace(nd, nb.node);
      }
    }
  }
  if (dist[from] == kInf) return std::nullopt;

  std::vector<NodeId> path{from};
  NodeId u = from;
  while (u != to) {
    bool advanced = false;
    for (const Neighbor& nb : topo.neighbors(u)) {
      if (mask.blocked_nodes[nb.node] || !mask.edge_open(u, nb.node) || dist[nb.node] == kInf) continue;
      if (nearly_equal(dist[nb.node] + nb.weight, dist[u])) {
        path.push_back(nb.node);
        u = nb.node;
        advanced = true;
        break;
      }
    }
    if (!advanced || path.size() > n) throw InvariantError("k_shortest_paths: cheapest-path walk failed");
  }
  return path;
}

struct Candidate {
  double cost;
  std::vector<NodeId> nodes;
  friend auto operator<=>(const Candidate&, const Candidate&) = default;
};

}  // namespace

double path_cost(const Topology& topology, std::span<const NodeId> nodes) {
  double cost = 0.0;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    auto w = topology.edge_weight(nodes[i - 1], nodes[i]);
    if (!w) {
      throw InputError("path: nodes " + std::to_string(nodes[i - 1]) + " and " + std::to_string(nodes[i]) +
                       " are not adjacent");
    }
    cost += *w;
  }
  return cost;
}

PathSet k_shortest_paths(const Topology& topology, const Flow& flow, std::size_t k) {
  if (!topology.contains(flow.source) || !topology.contains(flow.target)) {
    throw InputError("paths: flow (" + std::to_string(flow.source) + "," + std::to_string(flow.target) +
                     ") references a node outside the topology");
  }
  if (k == 0) throw InputError("paths: k must be at least 1");

  PathSet result{flow, k, {}};
  const NodeId s = flow.source;
  const NodeId t = flow.target;
  const std::size_t n = topology.num_nodes();

  // One-hop paths are never eligible, so the direct edge is simply absent.
  SearchMask base{std::vector<bool>(n, false), {edge_key(s, t)}};

  auto first = cheapest_lex_path(topology, s, t, base);
  if (!first) return result;
  result.paths.push_back({*first, path_cost(topology, *first)});

  std::set<Candidate> candidates;
  std::set<std::vector<NodeId>> accepted{*first};

  while (result.paths.size() < k) {
    const std::vector<NodeId> last = result.paths.back().nodes;
    for (std::size_t j = 0; j + 1 < last.size(); ++j) {
      const NodeId spur = last[j];
      SearchMask mask = base;
      for (std::size_t r = 0; r < j; ++r) mask.blocked_nodes[last[r]] = true;
      for (const Path& p : result.paths) {
        if (p.nodes.size() > j + 1 && std::equal(last.begin(), last.begin() + static_cast<std::ptrdiff_t>(j + 1),
                                                 p.nodes.begin())) {
          mask.blocked_edges.insert(edge_key(p.nodes[j], p.nodes[j + 1]));
        }
      }
      auto spur_path = cheapest_lex_path(topology, spur, t, mask);
      if (!spur_path) continue;
      std::vector<NodeId> full(last.begin(), last.begin() + static_cast<std::ptrdiff_t>(j));
      full.insert(full.end(), spur_path->begin(), spur_path->end());
      if (accepted.contains(full)) continue;
      double cost = path_cost(topology, full);
      candidates.insert({cost, std::move(full)});
    }
    if (candidates.empty()) break;
    auto best = candidates.extract(candidates.begin());
    accepted.insert(best.value().nodes);
    result.paths.push_back({std::move(best.value().nodes), best.value().cost});
  }
  return result;
}

std::vector<PathSet> k_shortest_paths(const Topology& topology, const FlowSet& flows, std::size_t k) {
  std::vector<PathSet> out;
  out.reserve(flows.size());
  for (const Flow& f : flows) out.push_back(k_shortest_paths(topology, f, k));
  return out;
}

Combo path_combo(const Path& path, const Assignment& assignment) {
  Combo combo;
  for (NodeId node : path.interior()) {
    if (node >= assignment.num_nodes()) {
      throw InputError("combo: interior node " + std::to_string(node) + " has no manufacturer");
    }
    combo.insert(assignment[node]);
  }
  return combo;
}

}  // namespace sovplan
