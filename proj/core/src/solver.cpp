#include "sovplan/solver.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "sovplan/error.hpp"
#include "sovplan/heuristics.hpp"

namespace sovplan {

using detail::Int128;

namespace {

using Clock = std::chrono::steady_clock;

/// Flat view of the instance's paths used by both searches.
struct Layout {
  std::vector<std::vector<NodeId>> interiors;         // per global path
  std::vector<std::size_t> flow_begin;                // R + 1 offsets into interiors
  std::vector<std::vector<std::size_t>> node_paths;   // paths with the node in their interior
  std::vector<std::vector<std::size_t>> node_flows;   // flows owning those paths
  std::vector<NodeId> relevant;                       // nodes with a non-empty node_paths, ascending
};

Layout make_layout(const Instance& inst) {
  Layout lay;
  const std::size_t n = inst.topology.num_nodes();
  lay.node_paths.assign(n, {});
  lay.node_flows.assign(n, {});
  lay.flow_begin.push_back(0);
  for (std::size_t r = 0; r < inst.path_sets.size(); ++r) {
    for (const Path& p : inst.path_sets[r].paths) {
      const std::size_t g = lay.interiors.size();
      auto interior = p.interior();
      lay.interiors.emplace_back(interior.begin(), interior.end());
      for (NodeId v : interior) {
        lay.node_paths[v].push_back(g);
        if (lay.node_flows[v].empty() || lay.node_flows[v].back() != r) lay.node_flows[v].push_back(r);
      }
    }
    lay.flow_begin.push_back(lay.interiors.size());
  }
  for (NodeId v = 0; v < n; ++v) {
    if (!lay.node_paths[v].empty()) lay.relevant.push_back(v);
  }
  return lay;
}

std::int64_t flow_value(const Instance& inst, const Layout& lay, std::size_t r,
                        std::span<const ManufacturerId> labels, std::vector<Combo>& scratch) {
  scratch.clear();
  for (std::size_t g = lay.flow_begin[r]; g < lay.flow_begin[r + 1]; ++g) {
    Combo c;
    for (NodeId v : lay.interiors[g]) c.insert(labels[v]);
    scratch.push_back(c);
  }
  return scaled_flow_reward(scratch, inst.reward_scale);
}

std::int64_t total_value(const Instance& inst, const Layout& lay, std::span<const ManufacturerId> labels,
                         std::vector<std::int64_t>* per_flow = nullptr) {
  std::vector<Combo> scratch;
  std::int64_t total = 0;
  if (per_flow) per_flow->assign(inst.path_sets.size(), 0);
  for (std::size_t r = 0; r < inst.path_sets.size(); ++r) {
    std::int64_t v = flow_value(inst, lay, r, labels, scratch);
    if (per_flow) (*per_flow)[r] = v;
    total += inst.scaled_weights[r] * v;
  }
  return total;
}

/// best_cap[n]: largest scaled reward any n paths of one flow can earn,
/// i.e. the n largest 1/|x| over distinct combos.
std::vector<std::int64_t> reward_caps(const Instance& inst, std::size_t max_paths) {
  std::vector<std::int64_t> cap(max_paths + 1, 0);
  for (std::size_t n = 1; n <= max_paths; ++n) {
    std::int64_t next = n <= inst.combos.size() ? inst.reward_scale / inst.combos[n - 1].size() : 0;
    cap[n] = cap[n - 1] + next;
  }
  return cap;
}

void check_assignment(const Instance& inst, const Assignment& assignment) {
  if (assignment.num_nodes() != inst.topology.num_nodes()) {
    throw InputError("objective: assignment covers " + std::to_string(assignment.num_nodes()) +
                     " nodes, topology has " + std::to_string(inst.topology.num_nodes()));
  }
  for (NodeId v = 0; v < assignment.num_nodes(); ++v) {
    if (assignment[v] >= inst.num_manufacturers) {
      throw InputError("objective: node " + std::to_string(v) + " uses manufacturer " + std::to_string(assignment[v]) +
                       " but the instance has " + std::to_string(inst.num_manufacturers));
    }
  }
}

Objective finish(const Instance& inst, const Assignment& assignment, std::int64_t expected_scaled) {
  Objective obj = evaluate_objective(inst, assignment);
  if (obj.scaled != expected_scaled) {
    throw InvariantError("solver: search value " + std::to_string(expected_scaled) +
                         " disagrees with metric re-evaluation " + std::to_string(obj.scaled));
  }
  return obj;
}

class BranchAndBound {
 public:
  BranchAndBound(const Instance& inst, const ExactBudget& budget)
      : inst_(inst), lay_(make_layout(inst)), budget_(budget), start_(Clock::now()) {
    const std::size_t n = inst.topology.num_nodes();
    labels_.assign(n, 0);
    mask_.assign(lay_.interiors.size(), 0);
    open_.resize(lay_.interiors.size());
    for (std::size_t g = 0; g < lay_.interiors.size(); ++g) open_[g] = lay_.interiors[g].size();
    std::size_t max_paths = 0;
    for (const auto& ps : inst.path_sets) max_paths = std::max(max_paths, ps.paths.size());
    cap_ = reward_caps(inst, max_paths);
    flow_bound_.resize(inst.path_sets.size());
    for (std::size_t r = 0; r < flow_bound_.size(); ++r) {
      flow_bound_[r] = flow_bound(r);
      total_bound_ += inst.scaled_weights[r] * flow_bound_[r];
    }
    best_labels_ = labels_;
    best_value_ = total_value(inst, lay_, labels_);
  }

  OptimizationResult run() {
    dfs(0, -1);
    OptimizationResult res;
    res.assignment = Assignment(best_labels_, inst_.num_manufacturers);
    res.objective = finish(inst_, res.assignment, best_value_);
    res.solver = SolverKind::Exact;
    res.proven_optimal = !aborted_;
    res.stats.nodes_explored = nodes_;
    res.stats.wall_seconds = std::chrono::duration<double>(Clock::now() - start_).count();
    return res;
  }

 private:
  std::int64_t flow_bound(std::size_t r) const {
    const std::size_t begin = lay_.flow_begin[r];
    const std::size_t end = lay_.flow_begin[r + 1];
    std::int64_t decided = 0;
    std::int64_t optimistic = 0;
    std::size_t distinct = 0;
    std::size_t undecided = 0;
    for (std::size_t g = begin; g < end; ++g) {
      if (open_[g] == 0) {
        bool repeated = false;
        for (std::size_t h = begin; h < g && !repeated; ++h) repeated = open_[h] == 0 && mask_[h] == mask_[g];
        if (!repeated) {
          decided += inst_.reward_scale / std::popcount(mask_[g]);
          ++distinct;
        }
      } else {
        // Best case: no further manufacturer joins and the combo is new.
        optimistic += inst_.reward_scale / std::max(1, std::popcount(mask_[g]));
        ++undecided;
      }
    }
    return std::min(cap_[distinct + undecided], decided + optimistic);
  }

  struct PathUndo {
    std::size_t path;
    std::uint32_t mask;
  };
  struct FlowUndo {
    std::size_t flow;
    std::int64_t bound;
  };

  void dfs(std::size_t depth, int max_label) {
    if (aborted_) return;
    if (budget_.max_nodes != 0 && nodes_ >= budget_.max_nodes) {
      aborted_ = true;
      return;
    }
    ++nodes_;
    if (budget_.time_limit && (nodes_ & 1023u) == 0 && Clock::now() - start_ > *budget_.time_limit) {
      aborted_ = true;
      return;
    }
    if (total_bound_ <= best_value_) return;
    if (depth == lay_.relevant.size()) {
      best_value_ = total_bound_;
      best_labels_ = labels_;
      return;
    }

    const NodeId v = lay_.relevant[depth];
    const int limit = std::min<int>(static_cast<int>(inst_.num_manufacturers) - 1, max_label + 1);
    for (int m = 0; m <= limit; ++m) {
      const std::size_t path_mark = path_undo_.size();
      const std::size_t flow_mark = flow_undo_.size();
      labels_[v] = static_cast<ManufacturerId>(m);
      for (std::size_t g : lay_.node_paths[v]) {
        path_undo_.push_back({g, mask_[g]});
        mask_[g] |= 1u << m;
        --open_[g];
      }
      for (std::size_t r : lay_.node_flows[v]) {
        flow_undo_.push_back({r, flow_bound_[r]});
        std::int64_t nb = flow_bound(r);
        total_bound_ += inst_.scaled_weights[r] * (nb - flow_bound_[r]);
        flow_bound_[r] = nb;
      }

      dfs(depth + 1, std::max(max_label, m));

      while (flow_undo_.size() > flow_mark) {
        const FlowUndo& u = flow_undo_.back();
        total_bound_ += inst_.scaled_weights[u.flow] * (u.bound - flow_bound_[u.flow]);
        flow_bound_[u.flow] = u.bound;
        flow_undo_.pop_back();
      }
      while (path_undo_.size() > path_mark) {
        const PathUndo& u = path_undo_.back();
        mask_[u.path] = u.mask;
        ++open_[u.path];
        path_undo_.pop_back();
      }
      labels_[v] = 0;
      if (aborted_) return;
    }
  }

  const Instance& inst_;
  Layout lay_;
  ExactBudget budget_;
  Clock::time_point start_;

  std::vector<ManufacturerId> labels_;
  std::vector<std::uint32_t> mask_;
  std::vector<std::size_t> open_;
  std::vector<std::int64_t> cap_;
  std::vector<std::int64_t> flow_bound_;
  std::int64_t total_bound_ = 0;

  std::vector<PathUndo> path_undo_;
  std::vector<FlowUndo> flow_undo_;

  std::vector<ManufacturerId> best_labels_;
  std::int64_t best_value_ = 0;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

class HillClimber {
 public:
  HillClimber(const Instance& inst) : inst_(inst), lay_(make_layout(inst)) {
    for (NodeId v : lay_.relevant) {
      for (ManufacturerId m = 0; m < inst.num_manufacturers; ++m) moves_.push_back({v, m});
    }
  }

  struct Outcome {
    std::vector<ManufacturerId> labels;
    std::int64_t value = 0;
    std::uint64_t iterations = 0;
  };

  Outcome climb(std::vector<ManufacturerId> labels, std::uint64_t max_iterations, std::mt19937_64& rng) {
    Outcome out;
    std::vector<std::int64_t> per_flow;
    std::int64_t current = total_value(inst_, lay_, labels, &per_flow);
    std::vector<std::int64_t> trial;
    std::vector<Combo> scratch;

    bool improved = true;
    while (improved && out.iterations < max_iterations) {
      improved = false;
      std::shuffle(moves_.begin(), moves_.end(), rng);
      for (const auto& [v, m] : moves_) {
        if (labels[v] == m) continue;
        if (out.iterations >= max_iterations) break;
        ++out.iterations;

        const ManufacturerId old = labels[v];
        labels[v] = m;
        std::int64_t delta = 0;
        trial.clear();
        for (std::size_t r : lay_.node_flows[v]) {
          std::int64_t nv = flow_value(inst_, lay_, r, labels, scratch);
          trial.push_back(nv);
          delta += inst_.scaled_weights[r] * (nv - per_flow[r]);
        }
        if (delta > 0) {
          current += delta;
          for (std::size_t i = 0; i < trial.size(); ++i) per_flow[lay_.node_flows[v][i]] = trial[i];
          improved = true;
        } else {
          labels[v] = old;
        }
      }
    }
    out.value = current;
    out.labels = std::move(labels);
    return out;
  }

  std::int64_t value_of(std::span<const ManufacturerId> labels) const { return total_value(inst_, lay_, labels); }

 private:
  const Instance& inst_;
  Layout lay_;
  std::vector<std::pair<NodeId, ManufacturerId>> moves_;
};

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  Int128 l = static_cast<Int128>(a / std::gcd(a, b)) * b;
  if (l > INT64_MAX) throw InputError("instance: flow weight denominators are too large");
  return static_cast<std::int64_t>(l);
}

}  // namespace

std::string_view to_string(SolverKind kind) {
  return kind == SolverKind::Exact ? "exact" : "local";
}

Instance build_instance(Topology topology, FlowSet flows, std::uint32_t num_manufacturers, std::size_t k) {
  if (num_manufacturers < 1 || num_manufacturers > kMaxManufacturers) {
    throw InputError("instance: number of manufacturers must be in [1," + std::to_string(kMaxManufacturers) +
                     "], got " + std::to_string(num_manufacturers));
  }
  if (k < 1) throw InputError("instance: k must be at least 1");
  if (flows.total_weight() == Rational(0)) throw InputError("instance: total flow weight is zero");

  Instance inst;
  inst.topology = std::move(topology);
  inst.flows = std::move(flows);
  inst.num_manufacturers = num_manufacturers;
  inst.k = k;
  inst.path_sets = k_shortest_paths(inst.topology, inst.flows, k);

  for (std::uint32_t bits = 1; bits < (1u << num_manufacturers); ++bits) inst.combos.emplace_back(bits);
  std::sort(inst.combos.begin(), inst.combos.end(), [](Combo a, Combo b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.members() < b.members();
  });
  for (Combo c : inst.combos) inst.combo_rewards.push_back(path_reward(c));

  inst.reward_scale = lcm_upto(num_manufacturers);
  for (const Flow& f : inst.flows) inst.weight_scale = checked_lcm(inst.weight_scale, f.weight.den());
  Int128 worst = 0;
  std::size_t max_paths = 0;
  for (const auto& ps : inst.path_sets) max_paths = std::max(max_paths, ps.paths.size());
  const auto cap = reward_caps(inst, max_paths);
  for (std::size_t r = 0; r < inst.flows.size(); ++r) {
    const Rational& w = inst.flows[r].weight;
    Int128 sw = static_cast<Int128>(w.num()) * (inst.weight_scale / w.den());
    if (sw > INT64_MAX) throw InputError("instance: flow weights are too large");
    inst.scaled_weights.push_back(static_cast<std::int64_t>(sw));
    worst += sw * cap[inst.path_sets[r].paths.size()];
  }
  if (worst * 2 > INT64_MAX) throw InputError("instance: objective range exceeds 64-bit arithmetic");
  return inst;
}

Objective evaluate_objective(const Instance& instance, const Assignment& assignment) {
  check_assignment(instance, assignment);
  const Assignment widened(std::vector<ManufacturerId>(assignment.values().begin(), assignment.values().end()),
                           instance.num_manufacturers);
  ScoreReport report = psd_score(instance.path_sets, widened);
  Objective obj;
  obj.weighted_sum = report.weighted_sum;
  obj.psd = report.psd;
  Rational scaled = report.weighted_sum * Rational(instance.reward_scale) * Rational(instance.weight_scale);
  if (!scaled.is_integer()) throw InvariantError("objective: scaled weighted sum is not integral");
  obj.scaled = scaled.num();
  return obj;
}

OptimizationResult solve_exact(const Instance& instance, const ExactBudget& budget) {
  if (budget.time_limit && budget.time_limit->count() <= 0) throw InputError("exact: time limit must be positive");
  return BranchAndBound(instance, budget).run();
}

std::vector<Assignment> local_search_seeds(const Instance& instance) {
  std::vector<Assignment> seeds;
  seeds.push_back(Assignment::uniform(instance.topology.num_nodes(), instance.num_manufacturers));
  for (CentralityKind kind : kAllCentralityKinds) {
    try {
      seeds.push_back(round_robin_assign(centrality_ranking(instance.topology, kind, instance.flows),
                                         instance.num_manufacturers));
    } catch (const InputError&) {
      // closeness on a disconnected graph has no ranking; skip that seed
    }
  }
  return seeds;
}

OptimizationResult solve_local(const Instance& instance, const LocalSearchParams& params) {
  if (params.restarts < 1) throw InputError("local: restarts must be positive");
  const auto start = Clock::now();
  const std::size_t n = instance.topology.num_nodes();
  const std::uint64_t max_iterations =
      params.iterations.value_or(10ull * n * instance.num_manufacturers);

  HillClimber climber(instance);
  const auto seeds = local_search_seeds(instance);

  std::vector<ManufacturerId> best;
  std::int64_t best_value = 0;
  bool have_best = false;
  auto consider = [&](const std::vector<ManufacturerId>& labels, std::int64_t value) {
    if (!have_best || value > best_value || (value == best_value && labels < best)) {
      best = labels;
      best_value = value;
      have_best = true;
    }
  };

  for (const Assignment& s : seeds) {
    std::vector<ManufacturerId> labels(s.values().begin(), s.values().end());
    consider(labels, climber.value_of(labels));
  }

  SearchStats stats;
  stats.seed = params.seed;
  for (std::uint32_t restart = 0; restart < params.restarts; ++restart) {
    std::seed_seq seq{static_cast<std::uint32_t>(params.seed), static_cast<std::uint32_t>(params.seed >> 32),
                      restart};
    std::mt19937_64 rng(seq);
    std::vector<ManufacturerId> start_labels;
    if (restart < seeds.size()) {
      start_labels.assign(seeds[restart].values().begin(), seeds[restart].values().end());
    } else {
      std::uniform_int_distribution<ManufacturerId> pick(0, instance.num_manufacturers - 1);
      start_labels.resize(n);
      for (auto& m : start_labels) m = pick(rng);
    }
    auto out = climber.climb(std::move(start_labels), max_iterations, rng);
    stats.iterations += out.iterations;
    ++stats.restarts;
    consider(out.labels, out.value);
  }

  OptimizationResult res;
  res.assignment = Assignment(best, instance.num_manufacturers);
  res.objective = finish(instance, res.assignment, best_value);
  res.solver = SolverKind::Local;
  res.proven_optimal = false;
  stats.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  res.stats = stats;
  return res;
}

}  // namespace sovplan
