#include "sovplan/metric.hpp"

#include <algorithm>

#include "sovplan/error.hpp"

namespace sovplan {

Rational path_reward(Combo combo) {
  if (combo.empty()) throw InputError("path reward: empty manufacturer combination");
  return Rational(1, combo.size());
}

std::int64_t scaled_flow_reward(std::span<const Combo> combos, std::int64_t scale) {
  std::int64_t total = 0;
  for (std::size_t i = 0; i < combos.size(); ++i) {
    if (combos[i].empty()) throw InputError("path reward: empty manufacturer combination");
    bool repeated = false;
    for (std::size_t j = 0; j < i && !repeated; ++j) repeated = combos[j] == combos[i];
    if (!repeated) total += scale / combos[i].size();
  }
  return total;
}

FlowScore flow_reward(const PathSet& path_set, const Assignment& assignment) {
  FlowScore score;
  score.path_set = path_set;
  score.no_eligible_paths = path_set.paths.empty();
  for (std::size_t i = 0; i < path_set.paths.size(); ++i) {
    PathScore ps;
    ps.combo = path_combo(path_set.paths[i], assignment);
    for (std::size_t j = 0; j < i; ++j) {
      if (score.paths[j].kept() && score.paths[j].combo == ps.combo) {
        ps.duplicate_of = j;
        break;
      }
    }
    if (ps.kept()) {
      ps.reward = path_reward(ps.combo);
      score.reward += ps.reward;
    }
    score.paths.push_back(ps);
  }
  return score;
}

ScoreReport psd_score(std::span<const PathSet> path_sets, const Assignment& assignment) {
  ScoreReport report;
  report.num_manufacturers = assignment.num_manufacturers();
  report.k = path_sets.empty() ? 0 : path_sets.front().k;
  for (const PathSet& ps : path_sets) {
    FlowScore fs = flow_reward(ps, assignment);
    report.weighted_sum += ps.flow.weight * fs.reward;
    report.total_weight += ps.flow.weight;
    if (fs.no_eligible_paths) ++report.flows_without_paths;
    report.flows.push_back(std::move(fs));
  }
  if (report.total_weight == Rational(0)) throw InputError("psd: total flow weight is zero");
  report.psd = report.weighted_sum / report.total_weight;
  return report;
}

ScoreReport psd_score(const Topology& topology, const FlowSet& flows, const Assignment& assignment, std::size_t k) {
  if (assignment.num_nodes() != topology.num_nodes()) {
    throw InputError("psd: assignment covers " + std::to_string(assignment.num_nodes()) + " nodes, topology has " +
                     std::to_string(topology.num_nodes()));
  }
  if (flows.total_weight() == Rational(0)) throw InputError("psd: total flow weight is zero");
  auto path_sets = k_shortest_paths(topology, flows, k);
  ScoreReport report = psd_score(path_sets, assignment);
  report.k = k;
  return report;
}

Rational flow_reward_upper_bound(std::uint32_t num_manufacturers) {
  if (num_manufacturers < 1) throw InputError("upper bound: need at least one manufacturer");
  if (num_manufacturers > kMaxManufacturers) {
    throw InputError("upper bound: at most " + std::to_string(kMaxManufacturers) + " manufacturers supported");
  }
  Rational total(0);
  std::int64_t binom = 1;  // C(M, i), built incrementally
  for (std::int64_t i = 1; i <= static_cast<std::int64_t>(num_manufacturers); ++i) {
    binom = binom * (num_manufacturers - i + 1) / i;
    total += Rational(binom, i);
  }
  return total;
}

}  // namespace sovplan
