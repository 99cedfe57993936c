#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "sovplan/assignment.hpp"
#include "sovplan/metric.hpp"
#include "sovplan/paths.hpp"
#include "sovplan/rational.hpp"
#include "sovplan/topology.hpp"

namespace sovplan {

/// Everything the manufacturer-assignment problem needs, with path sets
/// enumerated once.
struct Instance {
  Topology topology;
  FlowSet flows;
  std::uint32_t num_manufacturers = 1;
  std::size_t k = 1;
  std::vector<PathSet> path_sets;  // parallel to flows

  /// All non-empty combos, ordered by size then member list:
  /// {0},{1},...,{0,1},{0,2},...
  std::vector<Combo> combos;
  std::vector<Rational> combo_rewards;  // 1/|x|

  /// lcm(1..|M|): every flow reward times this is an integer.
  std::int64_t reward_scale = 1;
  /// lcm of weight denominators: every w_r times this is an integer.
  std::int64_t weight_scale = 1;
  std::vector<std::int64_t> scaled_weights;  // w_r * weight_scale
};

/// Throws InputError for |M| outside [1, kMaxManufacturers], k < 1, zero
/// total weight, or an instance whose objective would not fit in 64 bits.
Instance build_instance(Topology topology, FlowSet flows, std::uint32_t num_manufacturers, std::size_t k);

struct Objective {
  Rational weighted_sum{0};  // sum of w_r * pi_r
  Rational psd{0};           // weighted_sum / sum of w_r
  /// weighted_sum * reward_scale * weight_scale; what the searches compare.
  std::int64_t scaled = 0;

  friend bool operator==(const Objective&, const Objective&) = default;
};

/// Scores `assignment` through the metric module.
Objective evaluate_objective(const Instance& instance, const Assignment& assignment);

enum class SolverKind { Exact, Local };
std::string_view to_string(SolverKind kind);

struct SearchStats {
  std::uint64_t nodes_explored = 0;  // exact search
  std::uint64_t iterations = 0;      // local search move evaluations
  std::uint32_t restarts = 0;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
};

struct OptimizationResult {
  Assignment assignment;
  Objective objective;
  SolverKind solver = SolverKind::Exact;
  /// True only when the exact search ran to completion.
  bool proven_optimal = false;
  SearchStats stats;
};

struct ExactBudget {
  std::uint64_t max_nodes = 0;  // 0 = unlimited
  std::optional<std::chrono::duration<double>> time_limit;
};

/// Branch and bound over node -> manufacturer choices. Nodes that are not
/// interior to any path cannot change the objective and are fixed to 0.
/// Labels follow a restricted-growth order (a node may open at most one new
/// manufacturer), which removes relabelling symmetry; among optimal
/// assignments the lexicographically smallest is returned. If the budget
/// runs out, the best assignment found so far is returned with
/// proven_optimal == false.
OptimizationResult solve_exact(const Instance& instance, const ExactBudget& budget = {});

struct LocalSearchParams {
  std::uint32_t restarts = 16;
  /// Move evaluations per restart; defaults to 10 * |V| * |M|.
  std::optional<std::uint64_t> iterations;
  std::uint64_t seed = 0;
};

/// Hill climbing over single-node relabels with restarts. Restarts begin
/// from the uniform, nodal-degree, betweenness and closeness assignments,
/// then from seeded random ones. All deterministic seeds are scored even
/// when there are fewer restarts, so the result is never worse than any of
/// them. Reproducible for a fixed seed.
OptimizationResult solve_local(const Instance& instance, const LocalSearchParams& params = {});

/// Deterministic starting points used by solve_local, in order.
std::vector<Assignment> local_search_seeds(const Instance& instance);

}  // namespace sovplan
