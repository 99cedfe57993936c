#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sovplan/assignment.hpp"
#include "sovplan/topology.hpp"

namespace sovplan {

enum class CentralityKind { NodalDegree, Betweenness, Closeness };

inline constexpr CentralityKind kAllCentralityKinds[] = {CentralityKind::NodalDegree, CentralityKind::Betweenness,
                                                        CentralityKind::Closeness};

/// "nd", "bwc", "cc"
std::string_view to_string(CentralityKind kind);
std::optional<CentralityKind> parse_centrality_kind(std::string_view text);

struct CentralityRanking {
  CentralityKind kind = CentralityKind::NodalDegree;
  std::vector<double> values;  // indexed by node id
  std::vector<NodeId> order;   // descending value, ties by ascending id
};

/// Node importance under `kind`.
///  - nodal degree: edge count.
///  - betweenness: sum over flows (s,t) of the fraction of cheapest s-t
///    paths passing through the node; only pairs present in `flows` count.
///  - closeness: (n-1) / sum of cheapest-path distances. Throws InputError
///    on a disconnected topology.
CentralityRanking centrality_ranking(const Topology& topology, CentralityKind kind, const FlowSet& flows);

/// The i-th node of the ranking gets manufacturer i mod |M|.
Assignment round_robin_assign(const CentralityRanking& ranking, std::uint32_t num_manufacturers);

}  // namespace sovplan
