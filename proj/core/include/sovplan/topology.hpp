#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sovplan/rational.hpp"

namespace sovplan {

using NodeId = std::uint32_t;

/// Undirected edge, stored with a < b.
struct Edge {
  NodeId a = 0;
  NodeId b = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  NodeId node = 0;
  double weight = 1.0;
};

/// Simple undirected graph with dense node ids 0..n-1. Immutable once built.
class Topology {
 public:
  Topology() = default;

  /// Validates and normalises the edge list (a < b, sorted). Throws
  /// InputError on self-loops, duplicate edges, dangling node ids or
  /// non-positive weights.
  Topology(std::string name, std::vector<std::optional<std::string>> labels, std::vector<Edge> edges);

  /// Unlabelled graph on `num_nodes` nodes.
  Topology(std::string name, std::size_t num_nodes, std::vector<Edge> edges);

  const std::string& name() const { return name_; }
  std::size_t num_nodes() const { return labels_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }

  /// Adjacent nodes in ascending id order.
  std::span<const Neighbor> neighbors(NodeId node) const { return adjacency_.at(node); }
  std::size_t degree(NodeId node) const { return adjacency_.at(node).size(); }
  bool has_edge(NodeId a, NodeId b) const { return edge_weight(a, b).has_value(); }
  std::optional<double> edge_weight(NodeId a, NodeId b) const;
  bool contains(NodeId node) const { return node < num_nodes(); }

  const std::optional<std::string>& label(NodeId node) const { return labels_.at(node); }
  /// The label if present, otherwise the decimal id.
  std::string display_name(NodeId node) const;
  std::optional<NodeId> find_label(std::string_view label) const;

  bool is_connected() const;

  friend bool operator==(const Topology& a, const Topology& b) {
    return a.name_ == b.name_ && a.labels_ == b.labels_ && a.edges_ == b.edges_;
  }

 private:
  std::string name_;
  std::vector<std::optional<std::string>> labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

/// Parses the JSON topology document:
///   {"name": "...", "nodes": [{"id": 0, "label": "S"}, ...],
///    "edges": [{"a": 0, "b": 1, "weight": 1.0}, ...]}
/// Node ids must be 0..n-1 in file order. Errors carry the offending JSON
/// location (e.g. "edges[3]").
Topology parse_topology(std::string_view text);
std::string render_topology(const Topology& topology);

/// Cycle 0-1-...-(n-1)-0. Requires n >= 3.
Topology generate_ring(std::size_t n);
/// Full mesh on n nodes. Requires n >= 2.
Topology generate_complete(std::size_t n);

/// A traffic demand between two distinct nodes, stored with source < target.
struct Flow {
  NodeId source = 0;
  NodeId target = 0;
  Rational weight{1};

  Flow() = default;
  Flow(NodeId s, NodeId t, Rational w = Rational(1));

  friend bool operator==(const Flow&, const Flow&) = default;
};

/// Flows unique by unordered endpoint pair.
class FlowSet {
 public:
  FlowSet() = default;
  explicit FlowSet(std::vector<Flow> flows);

  std::span<const Flow> flows() const { return flows_; }
  std::size_t size() const { return flows_.size(); }
  bool empty() const { return flows_.empty(); }
  const Flow& operator[](std::size_t i) const { return flows_[i]; }
  auto begin() const { return flows_.begin(); }
  auto end() const { return flows_.end(); }

  Rational total_weight() const;

 private:
  std::vector<Flow> flows_;
};

/// Keyed by (min(a,b), max(a,b)).
using WeightTable = std::map<std::pair<NodeId, NodeId>, Rational>;

/// One flow per unordered node pair, in lexicographic (source, target)
/// order. Pairs missing from `weights` default to weight 1.
FlowSet enumerate_flows(const Topology& topology, const WeightTable* weights = nullptr);

}  // namespace sovplan
