#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sovplan/failsim.hpp"
#include "sovplan/heuristics.hpp"
#include "sovplan/solver.hpp"
#include "sovplan/topology.hpp"

namespace sovplan::cli {

enum class ExitCode : int { Ok = 0, InputError = 2, BudgetExhausted = 3, InvariantViolation = 4 };

enum class OutputFormat { Structured, Csv };

/// Flags shared by the subcommands; each command reads the subset it needs.
struct RunConfig {
  std::string topology;  // file path, or "ring:N" / "complete:N"
  std::string assignment;
  std::string weights;
  std::vector<std::uint32_t> manufacturers;
  std::vector<std::size_t> k;
  std::string solver = "exact";
  std::uint64_t seed = 0;
  std::optional<double> time_limit;
  std::uint64_t max_nodes = 0;
  std::uint32_t restarts = 16;
  std::optional<std::uint64_t> iterations;
  std::string mode = "residual";
  std::vector<std::string> metrics;
  std::string out;
  std::string format;  // empty = the command's default
  bool allow_heuristic_result = false;
  unsigned threads = 0;  // 0 = hardware concurrency
  std::string source;
  std::string target;
  std::size_t nodes = 0;
  std::string name;
};

Topology load_topology_source(const std::string& source);
FlowSet load_flows(const Topology& topology, const RunConfig& config);
Assignment load_assignment(const Topology& topology, const RunConfig& config);

SimMode sim_mode(const RunConfig& config);
OutputFormat output_format(const RunConfig& config, OutputFormat fallback);
std::vector<CentralityKind> centrality_kinds(const RunConfig& config);
NodeId resolve_node(const Topology& topology, const std::string& text);

ExactBudget exact_budget(const RunConfig& config);
LocalSearchParams local_params(const RunConfig& config);

/// Exactly one value, for commands that do not sweep.
std::uint32_t single_manufacturers(const RunConfig& config);
std::size_t single_k(const RunConfig& config);

/// Writes `contents` to `dir / relative` atomically, or to stdout if `dir`
/// is empty.
void emit(const std::string& dir, const std::filesystem::path& relative, const std::string& contents);

}  // namespace sovplan::cli
