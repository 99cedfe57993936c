#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sovplan/assignment.hpp"
#include "sovplan/paths.hpp"
#include "sovplan/rational.hpp"
#include "sovplan/topology.hpp"

namespace sovplan {

/// 1/|combo|. Throws InputError for an empty combo.
Rational path_reward(Combo combo);

/// Sum of scale/|c| over the first occurrence of each distinct combo.
/// `scale` must be a multiple of every combo size (lcm_upto(|M|) works), so
/// the result is the flow reward times `scale`, exactly.
std::int64_t scaled_flow_reward(std::span<const Combo> combos, std::int64_t scale);

struct PathScore {
  Combo combo;
  /// Index of the earlier path carrying the same combo, if this one was
  /// dropped as redundant.
  std::optional<std::size_t> duplicate_of;
  /// 1/|combo| for kept paths, 0 for redundant ones.
  Rational reward{0};

  bool kept() const { return !duplicate_of.has_value(); }
};

struct FlowScore {
  PathSet path_set;
  std::vector<PathScore> paths;  // parallel to path_set.paths
  Rational reward{0};
  /// The flow has no eligible multi-hop path; it contributes 0.
  bool no_eligible_paths = false;
};

FlowScore flow_reward(const PathSet& path_set, const Assignment& assignment);

struct ScoreReport {
  std::size_t k = 0;
  std::uint32_t num_manufacturers = 0;
  std::vector<FlowScore> flows;
  Rational weighted_sum{0};  // sum of w_r * pi_r
  Rational total_weight{0};  // sum of w_r
  Rational psd{0};           // weighted_sum / total_weight
  std::size_t flows_without_paths = 0;
};

/// Weighted mean flow reward over `flows`. Throws InputError if the
/// assignment does not cover the topology or all weights are zero.
ScoreReport psd_score(const Topology& topology, const FlowSet& flows, const Assignment& assignment, std::size_t k);

/// Same, over path sets that were already enumerated.
ScoreReport psd_score(std::span<const PathSet> path_sets, const Assignment& assignment);

/// Best possible flow reward with |M| manufacturers: every non-empty combo
/// present once, i.e. sum over i = 1..|M| of C(|M|, i) / i.
Rational flow_reward_upper_bound(std::uint32_t num_manufacturers);

}  // namespace sovplan
