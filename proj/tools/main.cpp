#include <exception>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "sovplan/error.hpp"

using namespace sovplan;
using namespace sovplan::cli;

namespace {

void add_topology(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--topology", c.topology, "Topology file, or ring:N / complete:N")->required();
  cmd->add_option("--weights", c.weights, "Flow weight table; every flow defaults to weight 1");
}

void add_manufacturers(CLI::App* cmd, RunConfig& c, bool required) {
  auto* opt = cmd->add_option("--manufacturers,-m", c.manufacturers, "Manufacturer counts, comma separated")
                  ->delimiter(',')
                  ->check(CLI::Range(1u, kMaxManufacturers));
  if (required) opt->required();
}

void add_k(CLI::App* cmd, RunConfig& c, bool required) {
  auto* opt = cmd->add_option("--k,-k", c.k, "Paths per flow, comma separated")->delimiter(',')->check(CLI::PositiveNumber);
  if (required) opt->required();
}

void add_solver(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--solver", c.solver, "exact | local | export-lp")->capture_default_str();
  cmd->add_option("--seed", c.seed, "Local search seed")->capture_default_str();
  cmd->add_option("--time-limit", c.time_limit, "Exact search wall-clock limit in seconds");
  cmd->add_option("--max-nodes", c.max_nodes, "Exact search node limit (0 = none)")->capture_default_str();
  cmd->add_option("--restarts", c.restarts, "Local search restarts")->capture_default_str();
  cmd->add_option("--iterations", c.iterations, "Local search move evaluations per restart");
  cmd->add_flag("--allow-heuristic-result", c.allow_heuristic_result,
                "Exit 0 even when the exact search runs out of budget");
}

void add_out(CLI::App* cmd, RunConfig& c, const char* help = "Output directory (default: stdout)") {
  cmd->add_option("--out,-o", c.out, help);
}

void add_format(CLI::App* cmd, RunConfig& c) { cmd->add_option("--format", c.format, "csv | structured"); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Manufacturer diversity scoring and assignment planning"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "sovplan 0.3.0");
  RunConfig c;

  auto* score = app.add_subcommand("score", "Score an assignment");
  add_topology(score, c);
  score->add_option("--assignment,-a", c.assignment, "Assignment file")->required();
  add_k(score, c, true);
  add_out(score, c);
  add_format(score, c);

  auto* optimize = app.add_subcommand("optimize", "Find a high-scoring assignment");
  add_topology(optimize, c);
  add_manufacturers(optimize, c, true);
  add_k(optimize, c, true);
  add_solver(optimize, c);
  add_out(optimize, c);

  auto* heuristic = app.add_subcommand("heuristic", "Centrality round-robin assignments");
  add_topology(heuristic, c);
  add_manufacturers(heuristic, c, true);
  heuristic->add_option("--metric", c.metrics, "nd | bwc | cc | all")->delimiter(',');
  add_out(heuristic, c);

  auto* simulate = app.add_subcommand("simulate", "Fail manufacturers and count surviving flows");
  add_topology(simulate, c);
  simulate->add_option("--assignment,-a", c.assignment, "Assignment file")->required();
  simulate->add_option("--mode", c.mode, "residual | kpaths")->capture_default_str();
  add_k(simulate, c, false);
  add_out(simulate, c);
  add_format(simulate, c);

  auto* sweep = app.add_subcommand("sweep", "Optimize and compare every manufacturer count and k");
  add_topology(sweep, c);
  add_manufacturers(sweep, c, false);
  add_k(sweep, c, false);
  add_solver(sweep, c);
  sweep->add_option("--metric", c.metrics, "Heuristics to compare against")->delimiter(',');
  sweep->add_option("--mode", c.mode, "residual | kpaths")->capture_default_str();
  sweep->add_option("--threads", c.threads, "Worker threads (default: all cores)");
  add_out(sweep, c, "Output directory");

  auto* paths = app.add_subcommand("paths", "List the eligible paths of one flow");
  add_topology(paths, c);
  paths->add_option("--source", c.source, "Node label or id")->required();
  paths->add_option("--target", c.target, "Node label or id")->required();
  add_k(paths, c, true);
  paths->add_option("--assignment,-a", c.assignment, "Show manufacturer combos under this assignment");
  add_out(paths, c);
  add_format(paths, c);

  auto* bound = app.add_subcommand("bound", "Largest possible flow reward");
  add_manufacturers(bound, c, true);
  add_format(bound, c);

  auto* gen = app.add_subcommand("gen", "Generate a synthetic topology");
  gen->require_subcommand(1);
  auto* ring = gen->add_subcommand("ring", "Cycle on N nodes");
  auto* complete = gen->add_subcommand("complete", "Complete graph on N nodes");
  for (auto* g : {ring, complete}) {
    g->add_option("nodes,--nodes,-n", c.nodes, "Node count")->required();
    g->add_option("--out,-o", c.out, "Output file (default: stdout)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ExitCode::InputError);
  }

  try {
    ExitCode code = ExitCode::Ok;
    if (score->parsed()) code = cmd_score(c);
    else if (optimize->parsed()) code = cmd_optimize(c);
    else if (heuristic->parsed()) code = cmd_heuristic(c);
    else if (simulate->parsed()) code = cmd_simulate(c);
    else if (sweep->parsed()) code = cmd_sweep(c);
    else if (paths->parsed()) code = cmd_paths(c);
    else if (bound->parsed()) code = cmd_bound(c);
    else if (ring->parsed()) code = cmd_gen("ring", c);
    else if (complete->parsed()) code = cmd_gen("complete", c);
    return static_cast<int>(code);
  } catch (const InputError& e) {
    std::cerr << "sovplan: " << e.what() << '\n';
    return static_cast<int>(ExitCode::InputError);
  } catch (const InvariantError& e) {
    std::cerr << "sovplan: internal invariant violated: " << e.what() << '\n';
    return static_cast<int>(ExitCode::InvariantViolation);
  } catch (const std::exception& e) {
    std::cerr << "sovplan: " << e.what() << '\n';
    return static_cast<int>(ExitCode::InvariantViolation);
  }
}
