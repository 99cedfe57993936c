#include "commands.hpp"

#include <iostream>

#include "json.hpp"
#include "sovplan/error.hpp"
#include "sovplan/io.hpp"
#include "sovplan/linear_model.hpp"
#include "sovplan/metric.hpp"

namespace sovplan::cli {

using nlohmann::ordered_json;

std::string cell_name(std::uint32_t manufacturers, std::size_t k) {
  return "optimized_M" + std::to_string(manufacturers) + "_k" + std::to_string(k);
}

OptimizationResult optimize_instance(const Instance& instance, const RunConfig& config) {
  OptimizationResult result;
  if (config.solver == "exact") {
    result = solve_exact(instance, exact_budget(config));
  } else if (config.solver == "local") {
    result = solve_local(instance, local_params(config));
  } else {
    throw InputError("--solver must be exact, local or export-lp, got '" + config.solver + "'");
  }
  if (evaluate_objective(instance, result.assignment) != result.objective) {
    throw InvariantError("solver objective does not match the re-scored assignment");
  }
  return result;
}

ExitCode cmd_score(const RunConfig& config) {
  Topology topology = load_topology_source(config.topology);
  Assignment assignment = load_assignment(topology, config);
  FlowSet flows = load_flows(topology, config);
  ScoreReport report = psd_score(topology, flows, assignment, single_k(config));
  if (output_format(config, OutputFormat::Structured) == OutputFormat::Csv) {
    emit(config.out, "score.csv", io::render_score_csv(report, topology));
  } else {
    emit(config.out, "score.json", io::render_score_report(report, topology));
  }
  if (!config.out.empty()) std::cout << "psd " << report.psd.to_decimal(4) << " (" << report.psd.to_string() << ")\n";
  return ExitCode::Ok;
}

ExitCode cmd_optimize(const RunConfig& config) {
  Topology topology = load_topology_source(config.topology);
  FlowSet flows = load_flows(topology, config);
  const bool single = config.manufacturers.size() == 1 && config.k.size() == 1;
  if (config.manufacturers.empty() || config.k.empty()) throw InputError("--manufacturers and --k are required");
  if (!single && config.out.empty()) throw InputError("--out is required when optimizing several cells");

  ExitCode code = ExitCode::Ok;
  for (std::uint32_t m : config.manufacturers) {
    for (std::size_t k : config.k) {
      Instance instance = build_instance(topology, flows, m, k);
      if (config.solver == "export-lp") {
        LinearModel model = export_linear_model(instance);
        emit(config.out, cell_name(m, k) + ".lp", render_lp(model, topology.name()));
        continue;
      }
      OptimizationResult result = optimize_instance(instance, config);
      const std::string cell = cell_name(m, k);
      if (config.out.empty()) {
        emit("", "", io::render_optimization_result(result, instance));
      } else {
        emit(config.out, "assignments/" + cell + ".json", io::render_assignment(result.assignment, topology));
        emit(config.out, "results/" + cell + ".json", io::render_optimization_result(result, instance));
        std::cout << cell << ' ' << to_string(result.solver) << " psd " << result.objective.psd.to_decimal(4)
                  << (result.proven_optimal ? " optimal" : "") << '\n';
      }
      if (result.solver == SolverKind::Exact && !result.proven_optimal) {
        std::cerr << "sovplan: " << cell << ": search budget exhausted before optimality was proven\n";
        if (!config.allow_heuristic_result) code = ExitCode::BudgetExhausted;
      }
    }
  }
  return code;
}

ExitCode cmd_heuristic(const RunConfig& config) {
  Topology topology = load_topology_source(config.topology);
  FlowSet flows = load_flows(topology, config);
  std::vector<CentralityKind> kinds = centrality_kinds(config);
  if (config.manufacturers.empty()) throw InputError("--manufacturers is required");
  if (config.out.empty() && (kinds.size() != 1 || config.manufacturers.size() != 1)) {
    throw InputError("--out is required for several metrics or manufacturer counts");
  }
  for (CentralityKind kind : kinds) {
    CentralityRanking ranking = centrality_ranking(topology, kind, flows);
    for (std::uint32_t m : config.manufacturers) {
      Assignment a = round_robin_assign(ranking, m);
      emit(config.out, "heuristics/" + std::string(to_string(kind)) + "_M" + std::to_string(m) + ".json",
           io::render_assignment(a, topology));
    }
  }
  return ExitCode::Ok;
}

ExitCode cmd_simulate(const RunConfig& config) {
  Topology topology = load_topology_source(config.topology);
  Assignment assignment = load_assignment(topology, config);
  FlowSet flows = load_flows(topology, config);
  SimMode mode = sim_mode(config);
  std::optional<std::size_t> k;
  if (mode == SimMode::KPaths) k = single_k(config);
  std::vector<SuccessReport> reports = simulate_all(topology, assignment, flows, mode, k);
  if (output_format(config, OutputFormat::Csv) == OutputFormat::Csv) {
    emit(config.out, "success.csv", io::render_success_csv(reports));
  } else {
    emit(config.out, "success.json", io::render_success_report(reports, topology, flows));
  }
  return ExitCode::Ok;
}

ExitCode cmd_paths(const RunConfig& config) {
  Topology topology = load_topology_source(config.topology);
  if (config.source.empty() || config.target.empty()) throw InputError("--source and --target are required");
  Flow flow(resolve_node(topology, config.source), resolve_node(topology, config.target));
  PathSet ps = k_shortest_paths(topology, flow, single_k(config));
  std::optional<Assignment> assignment;
  if (!config.assignment.empty()) assignment = load_assignment(topology, config);

  auto render_nodes = [&](const Path& p) {
    std::string s;
    for (NodeId n : p.nodes) s += (s.empty() ? "" : "-") + topology.display_name(n);
    return s;
  };
  if (output_format(config, OutputFormat::Csv) == OutputFormat::Structured) {
    ordered_json doc;
    doc["source"] = topology.display_name(flow.source);
    doc["target"] = topology.display_name(flow.target);
    doc["k"] = ps.k;
    ordered_json paths = ordered_json::array();
    for (const Path& p : ps.paths) {
      ordered_json jp;
      jp["nodes"] = render_nodes(p);
      jp["cost"] = p.cost;
      if (assignment) jp["combo"] = path_combo(p, *assignment).members();
      paths.push_back(std::move(jp));
    }
    doc["paths"] = std::move(paths);
    emit(config.out, "paths.json", doc.dump(2) + "\n");
    return ExitCode::Ok;
  }
  std::string text = "index,path,cost" + std::string(assignment ? ",combo" : "") + "\r\n";
  for (std::size_t i = 0; i < ps.paths.size(); ++i) {
    std::ostringstream cost;
    cost << ps.paths[i].cost;
    text += std::to_string(i + 1) + ',' + io::csv_field(render_nodes(ps.paths[i])) + ',' + cost.str();
    if (assignment) text += ',' + io::csv_field(path_combo(ps.paths[i], *assignment).to_string());
    text += "\r\n";
  }
  emit(config.out, "paths.csv", text);
  return ExitCode::Ok;
}

ExitCode cmd_bound(const RunConfig& config) {
  if (config.manufacturers.empty()) throw InputError("--manufacturers is required");
  if (config.format == "structured") {
    ordered_json doc = ordered_json::array();
    for (std::uint32_t m : config.manufacturers) {
      Rational b = flow_reward_upper_bound(m);
      doc.push_back({{"manufacturers", m}, {"bound", b.to_decimal(4)}, {"bound_exact", b.to_string()}});
    }
    std::cout << doc.dump(2) << '\n';
    return ExitCode::Ok;
  }
  for (std::uint32_t m : config.manufacturers) {
    if (config.manufacturers.size() > 1) std::cout << m << ' ';
    std::cout << flow_reward_upper_bound(m).to_decimal(4) << '\n';
  }
  return ExitCode::Ok;
}

ExitCode cmd_gen(const std::string& family, const RunConfig& config) {
  Topology t = family == "ring" ? generate_ring(config.nodes) : generate_complete(config.nodes);
  std::string text = render_topology(t);
  if (config.out.empty()) {
    std::cout << text;
  } else {
    io::write_file_atomic(config.out, text);
  }
  return ExitCode::Ok;
}

}  // namespace sovplan::cli
