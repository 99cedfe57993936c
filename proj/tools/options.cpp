#include "options.hpp"

#include <charconv>
#include <iostream>

#include "sovplan/error.hpp"
#include "sovplan/io.hpp"

namespace sovplan::cli {

namespace {

std::size_t parse_count(std::string_view text, std::string_view what) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InputError(std::string(what) + ": expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

Topology load_topology_source(const std::string& source) {
  if (source.empty()) throw InputError("--topology is required");
  if (source.starts_with("ring:")) return generate_ring(parse_count(source.substr(5), "--topology ring:N"));
  if (source.starts_with("complete:")) return generate_complete(parse_count(source.substr(9), "--topology complete:N"));
  return io::load_topology(source);
}

FlowSet load_flows(const Topology& topology, const RunConfig& config) {
  if (config.weights.empty()) return enumerate_flows(topology);
  WeightTable table = io::parse_weights(io::read_file(config.weights), topology);
  return enumerate_flows(topology, &table);
}

Assignment load_assignment(const Topology& topology, const RunConfig& config) {
  if (config.assignment.empty()) throw InputError("--assignment is required");
  return io::parse_assignment(io::read_file(config.assignment), topology);
}

SimMode sim_mode(const RunConfig& config) {
  auto mode = parse_sim_mode(config.mode);
  if (!mode) throw InputError("--mode must be residual or kpaths, got '" + config.mode + "'");
  return *mode;
}

OutputFormat output_format(const RunConfig& config, OutputFormat fallback) {
  if (config.format.empty()) return fallback;
  if (config.format == "structured" || config.format == "json") return OutputFormat::Structured;
  if (config.format == "csv") return OutputFormat::Csv;
  throw InputError("--format must be csv or structured, got '" + config.format + "'");
}

std::vector<CentralityKind> centrality_kinds(const RunConfig& config) {
  if (config.metrics.empty() || (config.metrics.size() == 1 && config.metrics[0] == "all")) {
    return {std::begin(kAllCentralityKinds), std::end(kAllCentralityKinds)};
  }
  std::vector<CentralityKind> out;
  for (const std::string& m : config.metrics) {
    auto kind = parse_centrality_kind(m);
    if (!kind) throw InputError("--metric must be nd, bwc, cc or all, got '" + m + "'");
    out.push_back(*kind);
  }
  return out;
}

NodeId resolve_node(const Topology& topology, const std::string& text) {
  if (auto by_label = topology.find_label(text)) return *by_label;
  std::size_t id = parse_count(text, "node");
  if (!topology.contains(static_cast<NodeId>(id))) throw InputError("node " + text + " is not in the topology");
  return static_cast<NodeId>(id);
}

ExactBudget exact_budget(const RunConfig& config) {
  ExactBudget budget;
  budget.max_nodes = config.max_nodes;
  if (config.time_limit) {
    if (*config.time_limit <= 0) throw InputError("--time-limit must be positive");
    budget.time_limit = std::chrono::duration<double>(*config.time_limit);
  }
  return budget;
}

LocalSearchParams local_params(const RunConfig& config) {
  LocalSearchParams params;
  params.restarts = config.restarts;
  params.iterations = config.iterations;
  params.seed = config.seed;
  return params;
}

std::uint32_t single_manufacturers(const RunConfig& config) {
  if (config.manufacturers.size() != 1) throw InputError("--manufacturers takes exactly one value here");
  return config.manufacturers.front();
}

std::size_t single_k(const RunConfig& config) {
  if (config.k.size() != 1) throw InputError("--k takes exactly one value here");
  if (config.k.front() < 1) throw InputError("--k must be at least 1");
  return config.k.front();
}

void emit(const std::string& dir, const std::filesystem::path& relative, const std::string& contents) {
  if (dir.empty()) {
    std::cout << contents;
    return;
  }
  std::filesystem::path target = std::filesystem::path(dir) / relative;
  std::error_code ec;
  std::filesystem::create_directories(target.parent_path(), ec);
  if (ec) throw InputError("cannot create " + target.parent_path().string() + ": " + ec.message());
  io::write_file_atomic(target, contents);
}

}  // namespace sovplan::cli
