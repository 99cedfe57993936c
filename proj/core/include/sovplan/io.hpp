#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sovplan/assignment.hpp"
#include "sovplan/failsim.hpp"
#include "sovplan/metric.hpp"
#include "sovplan/solver.hpp"
#include "sovplan/topology.hpp"

namespace sovplan::io {

/// Whole file as a string; InputError if it cannot be read.
std::string read_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

Topology load_topology(const std::filesystem::path& path);

/// {"topology_name": ..., "num_manufacturers": M,
///  "assignment": [{"node": 0, "label": "S", "manufacturer": 1}, ...]}
/// Every node of `topology` must appear exactly once; "label" is optional
/// on input and informational only.
Assignment parse_assignment(std::string_view text, const Topology& topology);
std::string render_assignment(const Assignment& assignment, const Topology& topology);

/// {"weights": [{"a": 0, "b": 3, "weight": 2.5}, ...]}. A weight may also be
/// a string such as "1/3".
WeightTable parse_weights(std::string_view text, const Topology& topology);

std::string render_score_report(const ScoreReport& report, const Topology& topology);
/// One row per (flow, path):
/// source,target,weight,flow_reward,path_index,path,combo,size,kept,duplicate_of,path_reward
std::string render_score_csv(const ScoreReport& report, const Topology& topology);

/// Solver outcome without wall-clock data, so reruns are byte-identical.
std::string render_optimization_result(const OptimizationResult& result, const Instance& instance);

/// scenario,mode,flows_total,flows_success,pct_success,pct_success_weighted
std::string render_success_csv(std::span<const SuccessReport> reports);
/// Same data as a document, plus the flows that failed in each scenario.
std::string render_success_report(std::span<const SuccessReport> reports, const Topology& topology,
                                  const FlowSet& flows);

/// RFC 4180 field quoting.
std::string csv_field(std::string_view text);

}  // namespace sovplan::io
