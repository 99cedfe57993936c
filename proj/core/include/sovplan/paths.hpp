#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sovplan/assignment.hpp"
#include "sovplan/topology.hpp"

namespace sovplan {

/// A simple path from a flow's source to its target.
struct Path {
  std::vector<NodeId> nodes;
  double cost = 0.0;

  /// Intermediate nodes: the node sequence without its two endpoints.
  std::span<const NodeId> interior() const {
    if (nodes.size() < 2) return {};
    return std::span<const NodeId>(nodes).subspan(1, nodes.size() - 2);
  }
  std::size_t hops() const { return nodes.empty() ? 0 : nodes.size() - 1; }

  friend bool operator==(const Path&, const Path&) = default;
};

/// Up to k eligible paths for one flow, ordered by (cost, node sequence).
struct PathSet {
  Flow flow;
  std::size_t k = 0;
  std::vector<Path> paths;
};

/// Sum of edge weights along `nodes`, accumulated front to back. Throws
/// InputError if two consecutive nodes are not adjacent.
double path_cost(const Topology& topology, std::span<const NodeId> nodes);

/// The k cheapest simple paths between the flow's endpoints, excluding the
/// direct one-hop edge. Ties in cost are broken by lexicographic node-id
/// sequence, so the result for k is always a prefix of the result for k+1.
PathSet k_shortest_paths(const Topology& topology, const Flow& flow, std::size_t k);

/// Path sets for every flow, in flow order.
std::vector<PathSet> k_shortest_paths(const Topology& topology, const FlowSet& flows, std::size_t k);

/// Manufacturers present among the path's interior nodes.
Combo path_combo(const Path& path, const Assignment& assignment);

}  // namespace sovplan
