#include "sovplan/topology.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "json.hpp"
#include "sovplan/error.hpp"

namespace sovplan {

using nlohmann::json;

Topology::Topology(std::string name, std::vector<std::optional<std::string>> labels, std::vector<Edge> edges)
    : name_(std::move(name)), labels_(std::move(labels)) {
  const std::size_t n = labels_.size();
  std::set<std::pair<NodeId, NodeId>> seen;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    Edge e = edges[i];
    const std::string where = "edge " + std::to_string(i) + " (" + std::to_string(e.a) + "," + std::to_string(e.b) + ")";
    if (e.a >= n || e.b >= n) throw InputError(where + ": references unknown node");
    if (e.a == e.b) throw InputError(where + ": self-loop");
    if (!(e.weight > 0.0)) throw InputError(where + ": weight must be positive");
    if (e.a > e.b) std::swap(e.a, e.b);
    if (!seen.emplace(e.a, e.b).second) throw InputError(where + ": duplicate edge");
    edges_.push_back(e);
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& x, const Edge& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });

  adjacency_.assign(n, {});
  for (const Edge& e : edges_) {
    adjacency_[e.a].push_back({e.b, e.weight});
    adjacency_[e.b].push_back({e.a, e.weight});
  }
  for (auto& adj : adjacency_) {
    std::sort(adj.begin(), adj.end(), [](const Neighbor& x, const Neighbor& y) { return x.node < y.node; });
  }
}

Topology::Topology(std::string name, std::size_t num_nodes, std::vector<Edge> edges)
    : Topology(std::move(name), std::vector<std::optional<std::string>>(num_nodes), std::move(edges)) {}

std::optional<double> Topology::edge_weight(NodeId a, NodeId b) const {
  if (!contains(a) || !contains(b)) return std::nullopt;
  const auto& adj = adjacency_[a];
  auto it = std::lower_bound(adj.begin(), adj.end(), b, [](const Neighbor& x, NodeId v) { return x.node < v; });
  if (it != adj.end() && it->node == b) return it->weight;
  return std::nullopt;
}

std::string Topology::display_name(NodeId node) const {
  const auto& l = labels_.at(node);
  return l ? *l : std::to_string(node);
}

std::optional<NodeId> Topology::find_label(std::string_view label) const {
  for (NodeId i = 0; i < labels_.size(); ++i) {
    if (labels_[i] && *labels_[i] == label) return i;
  }
  return std::nullopt;
}

bool Topology::is_connected() const {
  if (num_nodes() == 0) return true;
  std::vector<bool> seen(num_nodes(), false);
  std::queue<NodeId> q;
  q.push(0);
  seen[0] = true;
  std::size_t count = 1;
  while (!q.empty()) {
    NodeId u = q.front();
    q.pop();
    for (const Neighbor& nb : adjacency_[u]) {
      if (!seen[nb.node]) {
        seen[nb.node] = true;
        ++count;
        q.push(nb.node);
      }
    }
  }
  return count == num_nodes();
}

namespace {

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + ": missing field '" + key + "'");
  return *it;
}

NodeId node_ref(const json& value, const std::string& where) {
  if (!value.is_number_integer()) throw InputError(where + ": expected integer node id");
  auto v = value.get<std::int64_t>();
  if (v < 0) throw InputError(where + ": negative node id");
  return static_cast<NodeId>(v);
}

}  // namespace

Topology parse_topology(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("topology: malformed document: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("topology: document root must be an object");

  std::string name;
  if (auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) throw InputError("topology: 'name' must be a string");
    name = it->get<std::string>();
  }

  const json& nodes = require(doc, "nodes", "topology");
  if (!nodes.is_array()) throw InputError("topology: 'nodes' must be an array");
  std::vector<std::optional<std::string>> labels;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string where = "topology: nodes[" + std::to_string(i) + "]";
    const json& node = nodes[i];
    if (!node.is_object()) throw InputError(where + ": expected object");
    NodeId id = node_ref(require(node, "id", where), where + ".id");
    if (id != i) {
      throw InputError(where + ".id: expected " + std::to_string(i) + " (ids must be dense and in file order), got " +
                       std::to_string(id));
    }
    std::optional<std::string> label;
    if (auto it = node.find("label"); it != node.end() && !it->is_null()) {
      if (!it->is_string()) throw InputError(where + ".label: expected string");
      label = it->get<std::string>();
    }
    labels.push_back(std::move(label));
  }

  const json& edges = require(doc, "edges", "topology");
  if (!edges.is_array()) throw InputError("topology: 'edges' must be an array");
  std::vector<Edge> parsed;
  std::set<std::pair<NodeId, NodeId>> seen;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string where = "topology: edges[" + std::to_string(i) + "]";
    const json& edge = edges[i];
    if (!edge.is_object()) throw InputError(where + ": expected object");
    Edge e;
    e.a = node_ref(require(edge, "a", where), where + ".a");
    e.b = node_ref(require(edge, "b", where), where + ".b");
    if (e.a >= labels.size() || e.b >= labels.size())
      throw InputError(where + ": dangling node reference (" + std::to_string(e.a) + "," + std::to_string(e.b) + ")");
    if (e.a == e.b) throw InputError(where + ": self-loop on node " + std::to_string(e.a));
    if (auto it = edge.find("weight"); it != edge.end()) {
      if (!it->is_number()) throw InputError(where + ".weight: expected number");
      e.weight = it->get<double>();
      if (!(e.weight > 0.0)) throw InputError(where + ".weight: must be positive");
    }
    if (!seen.emplace(std::min(e.a, e.b), std::max(e.a, e.b)).second)
      throw InputError(where + ": duplicate edge (" + std::to_string(e.a) + "," + std::to_string(e.b) + ")");
    parsed.push_back(e);
  }
  return Topology(std::move(name), std::move(labels), std::move(parsed));
}

std::string render_topology(const Topology& topology) {
  std::string out = "{\n  \"name\": " + json(topology.name()).dump() + ",\n  \"nodes\": [";
  for (NodeId i = 0; i < topology.num_nodes(); ++i) {
    nlohmann::ordered_json node{{"id", i}};
    if (const auto& l = topology.label(i)) node["label"] = *l;
    out += (i == 0 ? "\n    " : ",\n    ") + node.dump();
  }
  out += "\n  ],\n  \"edges\": [";
  bool first = true;
  for (const Edge& e : topology.edges()) {
    nlohmann::ordered_json edge{{"a", e.a}, {"b", e.b}};
    if (e.weight != 1.0) edge["weight"] = e.weight;
    out += (first ? "\n    " : ",\n    ") + edge.dump();
    first = false;
  }
  return out + "\n  ]\n}\n";
}

Topology generate_ring(std::size_t n) {
  if (n < 3) throw InputError("ring: need at least 3 nodes, got " + std::to_string(n));
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>((i + 1) % n), 1.0});
  }
  return Topology("ring" + std::to_string(n), n, std::move(edges));
}

Topology generate_complete(std::size_t n) {
  if (n < 2) throw InputError("complete: need at least 2 nodes, got " + std::to_string(n));
  std::vector<Edge> edges;
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) edges.push_back({a, b, 1.0});
  }
  return Topology("complete" + std::to_string(n), n, std::move(edges));
}

Flow::Flow(NodeId s, NodeId t, Rational w) : source(std::min(s, t)), target(std::max(s, t)), weight(w) {
  if (s == t) throw InputError("flow: endpoints must differ (node " + std::to_string(s) + ")");
  if (w < Rational(0)) throw InputError("flow: negative weight " + w.to_string());
}

FlowSet::FlowSet(std::vector<Flow> flows) : flows_(std::move(flows)) {
  std::set<std::pair<NodeId, NodeId>> seen;
  for (const Flow& f : flows_) {
    if (f.source >= f.target) throw InputError("flowset: flow endpoints not normalised");
    if (!seen.emplace(f.source, f.target).second) {
      throw InputError("flowset: duplicate flow (" + std::to_string(f.source) + "," + std::to_string(f.target) + ")");
    }
  }
}

Rational FlowSet::total_weight() const {
  Rational total(0);
  for (const Flow& f : flows_) total += f.weight;
  return total;
}

FlowSet enumerate_flows(const Topology& topology, const WeightTable* weights) {
  const auto n = static_cast<NodeId>(topology.num_nodes());
  if (weights) {
    for (const auto& [pair, w] : *weights) {
      auto [a, b] = pair;
      if (a >= b || b >= n) {
        throw InputError("weights: unknown node pair (" + std::to_string(a) + "," + std::to_string(b) + ")");
      }
      if (w < Rational(0)) {
        throw InputError("weights: negative weight for (" + std::to_string(a) + "," + std::to_string(b) + ")");
      }
    }
  }
  std::vector<Flow> flows;
  flows.reserve(static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0) / 2);
  for (NodeId s = 0; s < n; ++s) {
    for (NodeId t = s + 1; t < n; ++t) {
      Rational w(1);
      if (weights) {
        if (auto it = weights->find({s, t}); it != weights->end()) w = it->second;
      }
      flows.emplace_back(s, t, w);
    }
  }
  return FlowSet(std::move(flows));
}

}  // namespace sovplan
