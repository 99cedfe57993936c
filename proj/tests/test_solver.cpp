#include <chrono>
#include <random>

#include "doctest.h"
#include "sovplan/error.hpp"
#include "sovplan/heuristics.hpp"
#include "sovplan/solver.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace sovplan;
using namespace fixtures;

namespace {

Rational to_rational(const oracle::Fraction& f) { return Rational(f.num, f.den); }

LocalSearchParams local_params(std::uint32_t restarts, std::uint64_t seed,
                               std::optional<std::uint64_t> iterations = std::nullopt) {
  LocalSearchParams p;
  p.restarts = restarts;
  p.seed = seed;
  p.iterations = iterations;
  return p;
}

ExactBudget node_budget(std::uint64_t max_nodes) {
  ExactBudget b;
  b.max_nodes = max_nodes;
  return b;
}

Instance single_flow_sample(std::uint32_t m) { return build_instance(sample_network(), FlowSet({Flow(S, T)}), m, 7); }

}  // namespace

TEST_CASE("instance combos and scales") {
  Instance inst = build_instance(sample_network(), enumerate_flows(sample_network()), 3, 4);
  std::vector<std::string> words;
  for (Combo c : inst.combos) words.push_back(c.to_word(3));
  CHECK(words == std::vector<std::string>{"100", "010", "001", "110", "101", "011", "111"});
  CHECK(inst.combo_rewards ==
        std::vector<Rational>{Rational(1), Rational(1), Rational(1), Rational(1, 2), Rational(1, 2), Rational(1, 2),
                              Rational(1, 3)});
  CHECK(inst.reward_scale == 6);
  CHECK(inst.weight_scale == 1);
  CHECK(inst.path_sets.size() == inst.flows.size());

  WeightTable w{{{S, T}, Rational(1, 3)}, {{A, B}, Rational(5, 4)}};
  Instance weighted = build_instance(sample_network(), enumerate_flows(sample_network(), &w), 2, 3);
  CHECK(weighted.weight_scale == 12);

  CHECK_THROWS_AS(build_instance(sample_network(), enumerate_flows(sample_network()), 0, 3), InputError);
  CHECK_THROWS_AS(build_instance(sample_network(), enumerate_flows(sample_network()), 17, 3), InputError);
  CHECK_THROWS_AS(build_instance(sample_network(), enumerate_flows(sample_network()), 2, 0), InputError);
}

TEST_CASE("objective evaluation") {
  Instance inst = single_flow_sample(3);
  Objective o = evaluate_objective(inst, sample_assignment());
  CHECK(o.weighted_sum == Rational(7, 3));
  CHECK(o.psd == Rational(7, 3));
  CHECK(o.scaled == 14);
  // fewer manufacturers than the instance is fine
  CHECK(evaluate_objective(inst, Assignment::uniform(8, 1)).weighted_sum == Rational(1));
  CHECK_THROWS_AS(evaluate_objective(inst, Assignment::uniform(8, 4, 3)), InputError);
}

TEST_CASE("exact solver on the example network") {
  OptimizationResult two = solve_exact(single_flow_sample(2));
  CHECK(two.proven_optimal);
  CHECK(two.objective.weighted_sum == Rational(5, 2));
  OptimizationResult three = solve_exact(single_flow_sample(3));
  CHECK(three.proven_optimal);
  CHECK(three.objective.weighted_sum == Rational(13, 3));
  CHECK(three.objective.weighted_sum <= flow_reward_upper_bound(3));
  CHECK(three.solver == SolverKind::Exact);
  // endpoints never lie on an interior, so they stay at 0
  CHECK(three.assignment[S] == 0);
  CHECK(three.assignment[T] == 0);
}

TEST_CASE("single-path instance reaches 1 with the smallest assignment") {
  Topology line("line", 3, {{0, 1}, {1, 2}});
  Instance inst = build_instance(line, enumerate_flows(line), 3, 4);
  OptimizationResult r = solve_exact(inst);
  CHECK(r.proven_optimal);
  CHECK(r.objective.weighted_sum == Rational(1));
  CHECK(r.assignment == Assignment::uniform(3, 3));
}

TEST_CASE("exact solver equals brute force") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 4 + trial % 4;
    const std::uint32_t m = 1 + trial % 3;
    const std::size_t k = 1 + trial % 4;
    Topology t = random_connected(rng, n, 0.4);
    Instance inst = build_instance(t, enumerate_flows(t), m, k);
    OptimizationResult r = solve_exact(inst);
    REQUIRE(r.proven_optimal);
    Rational expected = to_rational(oracle::brute_force_optimum(oracle::all_pair_paths(t, k), n, m));
    CHECK(r.objective.weighted_sum == expected);
    CHECK(evaluate_objective(inst, r.assignment) == r.objective);
  }
}

TEST_CASE("exact solver respects its budget") {
  Topology t = generate_complete(7);
  Instance inst = build_instance(t, enumerate_flows(t), 3, 4);
  OptimizationResult r = solve_exact(inst, node_budget(5));
  CHECK_FALSE(r.proven_optimal);
  CHECK(r.stats.nodes_explored <= 5);
  CHECK(evaluate_objective(inst, r.assignment) == r.objective);

  OptimizationResult again = solve_exact(inst, node_budget(5));
  CHECK(again.assignment == r.assignment);

  OptimizationResult timed = solve_exact(inst, ExactBudget{.max_nodes = 0, .time_limit = std::chrono::duration<double>(1e-9)});
  CHECK(evaluate_objective(inst, timed.assignment) == timed.objective);
  CHECK_THROWS_AS(solve_exact(inst, ExactBudget{.max_nodes = 0, .time_limit = std::chrono::duration<double>(0)}),
                  InputError);
}

TEST_CASE("local search") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = 5 + trial % 3;
    const std::uint32_t m = 2 + trial % 2;
    Topology t = random_connected(rng, n, 0.4);
    Instance inst = build_instance(t, enumerate_flows(t), m, 3);
    OptimizationResult exact = solve_exact(inst);
    OptimizationResult local = solve_local(inst, local_params(12, 7));
    CHECK(local.solver == SolverKind::Local);
    CHECK_FALSE(local.proven_optimal);
    CHECK(local.objective.weighted_sum <= exact.objective.weighted_sum);
    CHECK(evaluate_objective(inst, local.assignment) == local.objective);
    for (const Assignment& seed : local_search_seeds(inst)) {
      CHECK(evaluate_objective(inst, seed).scaled <= local.objective.scaled);
    }
  }

  OptimizationResult fig = solve_local(single_flow_sample(3), local_params(16, 1));
  CHECK(fig.objective.weighted_sum == Rational(13, 3));
}

TEST_CASE("local search is reproducible and keeps the best seed") {
  Topology g = sample_network();
  Instance inst = build_instance(g, enumerate_flows(g), 3, 4);
  LocalSearchParams p = local_params(6, 42);
  OptimizationResult a = solve_local(inst, p);
  OptimizationResult b = solve_local(inst, p);
  CHECK(a.assignment == b.assignment);
  CHECK(a.objective == b.objective);
  CHECK(a.stats.seed == 42);

  OptimizationResult frozen = solve_local(inst, local_params(1, 3, 0));
  std::int64_t best = 0;
  for (const Assignment& s : local_search_seeds(inst)) best = std::max(best, evaluate_objective(inst, s).scaled);
  CHECK(frozen.objective.scaled == best);
  CHECK(frozen.stats.iterations == 0);
}

TEST_CASE("local search seeds follow the heuristics") {
  Topology g = sample_network();
  Instance inst = build_instance(g, enumerate_flows(g), 2, 3);
  auto seeds = local_search_seeds(inst);
  REQUIRE(seeds.size() == 4);
  CHECK(seeds[0] == Assignment::uniform(8, 2));
  CHECK(seeds[1] == round_robin_assign(centrality_ranking(g, CentralityKind::NodalDegree, inst.flows), 2));

  Topology split("split", 5, {{0, 1}, {1, 2}, {3, 4}});
  Instance disconnected = build_instance(split, enumerate_flows(split), 2, 2);
  CHECK(local_search_seeds(disconnected).size() == 3);
}

TEST_CASE("optimum grows with manufacturers and dominates heuristics") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 12; ++trial) {
    Topology t = random_connected(rng, 5 + trial % 3, 0.45);
    FlowSet flows = enumerate_flows(t);
    Rational previous(0);
    for (std::uint32_t m = 1; m <= 3; ++m) {
      Instance inst = build_instance(t, flows, m, 3);
      OptimizationResult r = solve_exact(inst);
      CHECK(r.objective.weighted_sum >= previous);
      previous = r.objective.weighted_sum;
      for (CentralityKind kind : kAllCentralityKinds) {
        Assignment h = round_robin_assign(centrality_ranking(t, kind, flows), m);
        CHECK(evaluate_objective(inst, h).weighted_sum <= r.objective.weighted_sum);
      }
    }
  }
}
