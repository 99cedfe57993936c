#pragma once

#include "options.hpp"

namespace sovplan::cli {

ExitCode cmd_score(const RunConfig& config);
ExitCode cmd_optimize(const RunConfig& config);
ExitCode cmd_heuristic(const RunConfig& config);
ExitCode cmd_simulate(const RunConfig& config);
ExitCode cmd_sweep(const RunConfig& config);
ExitCode cmd_paths(const RunConfig& config);
ExitCode cmd_bound(const RunConfig& config);
ExitCode cmd_gen(const std::string& family, const RunConfig& config);

/// Runs the configured solver and re-scores the result through the metric
/// module; throws InvariantError if the two disagree.
OptimizationResult optimize_instance(const Instance& instance, const RunConfig& config);

std::string cell_name(std::uint32_t manufacturers, std::size_t k);

}  // namespace sovplan::cli
