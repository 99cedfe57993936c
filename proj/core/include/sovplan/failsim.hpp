#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sovplan/assignment.hpp"
#include "sovplan/paths.hpp"
#include "sovplan/rational.hpp"
#include "sovplan/topology.hpp"

namespace sovplan {

/// Manufacturers failing simultaneously.
struct FailureScenario {
  Combo failed;

  /// "[0,2]"
  std::string to_string() const;
  friend bool operator==(const FailureScenario&, const FailureScenario&) = default;
};

/// Every non-empty strict subset of the manufacturers, ordered by size and
/// then member list: [0],[1],[2],[0,1],[0,2],[1,2] for |M| = 3.
std::vector<FailureScenario> failure_scenarios(std::uint32_t num_manufacturers);

enum class SimMode {
  /// A flow survives if its endpoints stay connected once every failed
  /// non-endpoint node is removed.
  Residual,
  /// A flow survives if one of its k eligible paths, or its direct edge,
  /// avoids all failed interior nodes.
  KPaths,
};

std::string_view to_string(SimMode mode);
std::optional<SimMode> parse_sim_mode(std::string_view text);

struct SuccessReport {
  FailureScenario scenario;
  SimMode mode = SimMode::Residual;
  std::vector<bool> success;  // per flow
  std::size_t flows_total = 0;
  std::size_t flows_success = 0;
  Rational pct_success{0};           // 100 * successes / total
  Rational pct_success_weighted{0};  // 100 * successful weight / total weight
};

/// `path_sets` must be parallel to `flows` in KPaths mode and is ignored in
/// Residual mode. Throws InputError if the scenario names a manufacturer
/// the assignment does not have.
SuccessReport simulate(const Topology& topology, const Assignment& assignment, const FlowSet& flows,
                       const FailureScenario& scenario, SimMode mode, std::span<const PathSet> path_sets = {});

/// Convenience overload that enumerates the k-path sets itself.
SuccessReport simulate(const Topology& topology, const Assignment& assignment, const FlowSet& flows,
                       const FailureScenario& scenario, SimMode mode, std::optional<std::size_t> k);

/// One report per scenario, in failure_scenarios() order.
std::vector<SuccessReport> simulate_all(const Topology& topology, const Assignment& assignment, const FlowSet& flows,
                                        SimMode mode, std::optional<std::size_t> k = std::nullopt);

}  // namespace sovplan
