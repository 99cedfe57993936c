#include "sovplan/failsim.hpp"

#include <algorithm>
#include <numeric>

#include "sovplan/error.hpp"

namespace sovplan {

namespace {

/// Component id per node over surviving nodes; failed nodes get -1.
std::vector<int> surviving_components(const Topology& topo, const std::vector<bool>& failed) {
  const std::size_t n = topo.num_nodes();
  std::vector<int> comp(n, -1);
  int next = 0;
  std::vector<NodeId> stack;
  for (NodeId root = 0; root < n; ++root) {
    if (failed[root] || comp[root] >= 0) continue;
    comp[root] = next;
    stack.push_back(root);
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      for (const Neighbor& nb : topo.neighbors(u)) {
        if (!failed[nb.node] && comp[nb.node] < 0) {
          comp[nb.node] = next;
          stack.push_back(nb.node);
        }
      }
    }
    ++next;
  }
  return comp;
}

/// Components an endpoint can reach: its own if it survives, otherwise
/// those of its surviving neighbours (the endpoint itself is always kept).
std::vector<int> endpoint_components(const Topology& topo, NodeId node, const std::vector<int>& comp) {
  if (comp[node] >= 0) return {comp[node]};
  std::vector<int> out;
  for (const Neighbor& nb : topo.neighbors(node)) {
    if (comp[nb.node] >= 0) out.push_back(comp[nb.node]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::string FailureScenario::to_string() const {
  std::string s = "[";
  bool first = true;
  for (ManufacturerId m : failed.members()) {
    if (!first) s += ',';
    s += std::to_string(m);
    first = false;
  }
  return s + "]";
}

std::vector<FailureScenario> failure_scenarios(std::uint32_t num_manufacturers) {
  if (num_manufacturers < 2) throw InputError("failure scenarios: need at least two manufacturers");
  if (num_manufacturers > kMaxManufacturers) throw InputError("failure scenarios: too many manufacturers");
  std::vector<FailureScenario> out;
  const std::uint32_t all = (1u << num_manufacturers) - 1;
  for (std::uint32_t bits = 1; bits < all; ++bits) out.push_back({Combo(bits)});
  std::sort(out.begin(), out.end(), [](const FailureScenario& a, const FailureScenario& b) {
    if (a.failed.size() != b.failed.size()) return a.failed.size() < b.failed.size();
    return a.failed.members() < b.failed.members();
  });
  return out;
}

std::string_view to_string(SimMode mode) {
  return mode == SimMode::Residual ? "residual" : "kpaths";
}

std::optional<SimMode> parse_sim_mode(std::string_view text) {
  if (text == "residual") return SimMode::Residual;
  if (text == "kpaths") return SimMode::KPaths;
  return std::nullopt;
}

SuccessReport simulate(const Topology& topology, const Assignment& assignment, const FlowSet& flows,
                       const FailureScenario& scenario, SimMode mode, std::span<const PathSet> path_sets) {
  if (assignment.num_nodes() != topology.num_nodes()) {
    throw InputError("simulate: assignment does not cover the topology");
  }
  for (ManufacturerId m : scenario.failed.members()) {
    if (m >= assignment.num_manufacturers()) {
      throw InputError("simulate: scenario " + scenario.to_string() + " names manufacturer " + std::to_string(m) +
                       " but only " + std::to_string(assignment.num_manufacturers()) + " exist");
    }
  }
  if (mode == SimMode::KPaths && path_sets.size() != flows.size()) {
    throw InputError("simulate: k-path mode needs one path set per flow");
  }

  SuccessReport report;
  report.scenario = scenario;
  report.mode = mode;
  report.flows_total = flows.size();
  report.success.assign(flows.size(), false);

  std::vector<bool> failed(topology.num_nodes(), false);
  for (NodeId n = 0; n < topology.num_nodes(); ++n) failed[n] = scenario.failed.contains(assignment[n]);
  std::vector<int> comp;
  if (mode == SimMode::Residual) comp = surviving_components(topology, failed);

  Rational ok_weight(0);
  Rational total_weight(0);
  for (std::size_t r = 0; r < flows.size(); ++r) {
    const Flow& f = flows[r];
    bool ok = topology.has_edge(f.source, f.target);
    if (!ok && mode == SimMode::Residual) {
      auto a = endpoint_components(topology, f.source, comp);
      auto b = endpoint_components(topology, f.target, comp);
      std::vector<int> common;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
      ok = !common.empty();
    } else if (!ok) {
      for (const Path& p : path_sets[r].paths) {
        if ((path_combo(p, assignment).bits() & scenario.failed.bits()) == 0) {
          ok = true;
          break;
        }
      }
    }
    report.success[r] = ok;
    total_weight += f.weight;
    if (ok) {
      ++report.flows_success;
      ok_weight += f.weight;
    }
  }
  if (report.flows_total > 0) {
    report.pct_success = Rational(100) * Rational(static_cast<std::int64_t>(report.flows_success),
                                                  static_cast<std::int64_t>(report.flows_total));
  }
  report.pct_success_weighted =
      total_weight == Rational(0) ? report.pct_success : Rational(100) * ok_weight / total_weight;
  return report;
}

SuccessReport simulate(const Topology& topology, const Assignment& assignment, const FlowSet& flows,
                       const FailureScenario& scenario, SimMode mode, std::optional<std::size_t> k) {
  if (mode == SimMode::KPaths) {
    if (!k) throw InputError("simulate: k-path mode needs k");
    auto sets = k_shortest_paths(topology, flows, *k);
    return simulate(topology, assignment, flows, scenario, mode, sets);
  }
  return simulate(topology, assignment, flows, scenario, mode, std::span<const PathSet>{});
}

std::vector<SuccessReport> simulate_all(const Topology& topology, const Assignment& assignment, const FlowSet& flows,
                                        SimMode mode, std::optional<std::size_t> k) {
  std::vector<PathSet> sets;
  if (mode == SimMode::KPaths) {
    if (!k) throw InputError("simulate: k-path mode needs k");
    sets = k_shortest_paths(topology, flows, *k);
  }
  std::vector<SuccessReport> out;
  for (const FailureScenario& s : failure_scenarios(assignment.num_manufacturers())) {
    out.push_back(simulate(topology, assignment, flows, s, mode, sets));
  }
  return out;
}

}  // namespace sovplan
