#include "sovplan/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "sovplan/error.hpp"

namespace sovplan::io {

using nlohmann::ordered_json;

namespace {

constexpr int kDecimals = 6;

ordered_json parse_json(std::string_view text, const char* what) {
  try {
    return ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw InputError(std::string(what) + ": malformed document: " + e.what());
  }
}

std::string node_name(const Topology& t, NodeId n) { return t.display_name(n); }

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw InputError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

Topology load_topology(const std::filesystem::path& path) {
  try {
    return parse_topology(read_file(path));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

Assignment parse_assignment(std::string_view text, const Topology& topology) {
  ordered_json doc = parse_json(text, "assignment");
  if (!doc.is_object()) throw InputError("assignment: document root must be an object");
  auto m_it = doc.find("num_manufacturers");
  if (m_it == doc.end() || !m_it->is_number_integer() || m_it->get<std::int64_t>() < 1) {
    throw InputError("assignment: 'num_manufacturers' must be a positive integer");
  }
  const auto num_m = m_it->get<std::int64_t>();
  if (num_m > static_cast<std::int64_t>(kMaxManufacturers)) {
    throw InputError("assignment: at most " + std::to_string(kMaxManufacturers) + " manufacturers supported");
  }
  auto a_it = doc.find("assignment");
  if (a_it == doc.end() || !a_it->is_array()) throw InputError("assignment: 'assignment' must be an array");

  const std::size_t n = topology.num_nodes();
  std::vector<ManufacturerId> by_node(n, 0);
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < a_it->size(); ++i) {
    const std::string where = "assignment[" + std::to_string(i) + "]";
    const auto& entry = (*a_it)[i];
    if (!entry.is_object()) throw InputError("assignment: " + where + ": expected object");
    auto node = entry.find("node");
    auto man = entry.find("manufacturer");
    if (node == entry.end() || !node->is_number_integer()) throw InputError("assignment: " + where + ".node: expected integer");
    if (man == entry.end() || !man->is_number_integer()) {
      throw InputError("assignment: " + where + ".manufacturer: expected integer");
    }
    auto id = node->get<std::int64_t>();
    auto m = man->get<std::int64_t>();
    if (id < 0 || static_cast<std::size_t>(id) >= n) {
      throw InputError("assignment: " + where + ": node " + std::to_string(id) + " is not in the topology");
    }
    if (m < 0 || m >= num_m) {
      throw InputError("assignment: " + where + ": manufacturer " + std::to_string(m) + " out of range");
    }
    if (seen[static_cast<std::size_t>(id)]) {
      throw InputError("assignment: " + where + ": node " + std::to_string(id) + " assigned twice");
    }
    seen[static_cast<std::size_t>(id)] = true;
    by_node[static_cast<std::size_t>(id)] = static_cast<ManufacturerId>(m);
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!seen[v]) throw InputError("assignment: node " + std::to_string(v) + " has no manufacturer");
  }
  return Assignment(std::move(by_node), static_cast<std::uint32_t>(num_m));
}

std::string render_assignment(const Assignment& assignment, const Topology& topology) {
  ordered_json doc;
  doc["topology_name"] = topology.name();
  doc["num_manufacturers"] = assignment.num_manufacturers();
  ordered_json rows = ordered_json::array();
  for (NodeId v = 0; v < assignment.num_nodes(); ++v) {
    ordered_json row;
    row["node"] = v;
    if (v < topology.num_nodes() && topology.label(v)) row["label"] = *topology.label(v);
    row["manufacturer"] = assignment[v];
    rows.push_back(std::move(row));
  }
  doc["assignment"] = std::move(rows);
  return doc.dump(2) + "\n";
}

WeightTable parse_weights(std::string_view text, const Topology& topology) {
  ordered_json doc = parse_json(text, "weights");
  auto it = doc.is_object() ? doc.find("weights") : doc.end();
  if (it == doc.end() || !it->is_array()) throw InputError("weights: expected {\"weights\": [...]}");
  WeightTable table;
  for (std::size_t i = 0; i < it->size(); ++i) {
    const std::string where = "weights[" + std::to_string(i) + "]";
    const auto& e = (*it)[i];
    if (!e.is_object() || !e.contains("a") || !e.contains("b") || !e.contains("weight")) {
      throw InputError("weights: " + where + ": expected {a, b, weight}");
    }
    if (!e["a"].is_number_integer() || !e["b"].is_number_integer()) {
      throw InputError("weights: " + where + ": node ids must be integers");
    }
    auto a = e["a"].get<std::int64_t>();
    auto b = e["b"].get<std::int64_t>();
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= topology.num_nodes() ||
        static_cast<std::size_t>(b) >= topology.num_nodes() || a == b) {
      throw InputError("weights: " + where + ": unknown node pair (" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
    Rational w;
    const auto& wv = e["weight"];
    try {
      if (wv.is_number_integer()) {
        w = Rational(wv.get<std::int64_t>());
      } else if (wv.is_number()) {
        w = Rational::from_double(wv.get<double>());
      } else if (wv.is_string()) {
        w = Rational::parse(wv.get<std::string>());
      } else {
        throw InputError("expected number");
      }
    } catch (const std::exception& ex) {
      throw InputError("weights: " + where + ".weight: " + ex.what());
    }
    if (w < Rational(0)) throw InputError("weights: " + where + ": negative weight");
    auto key = std::make_pair(static_cast<NodeId>(std::min(a, b)), static_cast<NodeId>(std::max(a, b)));
    if (!table.emplace(key, w).second) throw InputError("weights: " + where + ": duplicate pair");
  }
  return table;
}

std::string render_score_report(const ScoreReport& report, const Topology& topology) {
  ordered_json doc;
  doc["topology_name"] = topology.name();
  doc["k"] = report.k;
  doc["num_manufacturers"] = report.num_manufacturers;
  doc["psd"] = report.psd.to_decimal(kDecimals);
  doc["psd_exact"] = report.psd.to_string();
  doc["weighted_sum"] = report.weighted_sum.to_string();
  doc["total_weight"] = report.total_weight.to_string();
  doc["flows_without_paths"] = report.flows_without_paths;
  ordered_json flows = ordered_json::array();
  for (const FlowScore& fs : report.flows) {
    const Flow& f = fs.path_set.flow;
    ordered_json jf;
    jf["source"] = f.source;
    jf["target"] = f.target;
    jf["source_name"] = node_name(topology, f.source);
    jf["target_name"] = node_name(topology, f.target);
    jf["weight"] = f.weight.to_string();
    jf["reward"] = fs.reward.to_decimal(kDecimals);
    jf["reward_exact"] = fs.reward.to_string();
    jf["no_eligible_paths"] = fs.no_eligible_paths;
    ordered_json paths = ordered_json::array();
    for (std::size_t i = 0; i < fs.paths.size(); ++i) {
      const Path& p = fs.path_set.paths[i];
      const PathScore& ps = fs.paths[i];
      ordered_json jp;
      jp["index"] = i + 1;
      std::string seq;
      for (std::size_t j = 0; j < p.nodes.size(); ++j) {
        if (j) seq += '-';
        seq += node_name(topology, p.nodes[j]);
      }
      jp["path"] = seq;
      jp["nodes"] = p.nodes;
      jp["cost"] = p.cost;
      jp["combo"] = ps.combo.members();
      jp["size"] = ps.combo.size();
      jp["kept"] = ps.kept();
      if (ps.duplicate_of) {
        jp["duplicate_of"] = *ps.duplicate_of + 1;
      } else {
        jp["duplicate_of"] = nullptr;
      }
      jp["reward"] = ps.reward.to_string();
      paths.push_back(std::move(jp));
    }
    jf["paths"] = std::move(paths);
    flows.push_back(std::move(jf));
  }
  doc["flows"] = std::move(flows);
  return doc.dump(2) + "\n";
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render_score_csv(const ScoreReport& report, const Topology& topology) {
  std::ostringstream out;
  out << "source,target,weight,flow_reward,path_index,path,combo,size,kept,duplicate_of,path_reward\r\n";
  for (const FlowScore& fs : report.flows) {
    const Flow& f = fs.path_set.flow;
    auto prefix = [&] {
      out << csv_field(node_name(topology, f.source)) << ',' << csv_field(node_name(topology, f.target)) << ','
          << csv_field(f.weight.to_string()) << ',' << fs.reward.to_decimal(kDecimals) << ',';
    };
    if (fs.paths.empty()) {
      prefix();
      out << ",,,,,,\r\n";
      continue;
    }
    for (std::size_t i = 0; i < fs.paths.size(); ++i) {
      const Path& p = fs.path_set.paths[i];
      const PathScore& ps = fs.paths[i];
      std::string seq;
      for (std::size_t j = 0; j < p.nodes.size(); ++j) {
        if (j) seq += '-';
        seq += node_name(topology, p.nodes[j]);
      }
      prefix();
      out << (i + 1) << ',' << csv_field(seq) << ',' << csv_field(ps.combo.to_string()) << ',' << ps.combo.size()
          << ',' << (ps.kept() ? "true" : "false") << ',';
      if (ps.duplicate_of) out << (*ps.duplicate_of + 1);
      out << ',' << csv_field(ps.reward.to_string()) << "\r\n";
    }
  }
  return out.str();
}

std::string render_optimization_result(const OptimizationResult& result, const Instance& instance) {
  ordered_json doc;
  doc["topology_name"] = instance.topology.name();
  doc["solver"] = std::string(to_string(result.solver));
  doc["status"] = result.proven_optimal ? "optimal" : (result.solver == SolverKind::Exact ? "budget_exhausted" : "heuristic");
  doc["proven_optimal"] = result.proven_optimal;
  doc["num_manufacturers"] = instance.num_manufacturers;
  doc["k"] = instance.k;
  doc["flows"] = instance.flows.size();
  doc["objective"] = result.objective.weighted_sum.to_decimal(kDecimals);
  doc["objective_exact"] = result.objective.weighted_sum.to_string();
  doc["psd"] = result.objective.psd.to_decimal(kDecimals);
  doc["psd_exact"] = result.objective.psd.to_string();
  ordered_json stats;
  stats["nodes_explored"] = result.stats.nodes_explored;
  stats["iterations"] = result.stats.iterations;
  stats["restarts"] = result.stats.restarts;
  stats["seed"] = result.stats.seed;
  doc["stats"] = std::move(stats);
  doc["assignment"] = result.assignment.values();
  return doc.dump(2) + "\n";
}

std::string render_success_csv(std::span<const SuccessReport> reports) {
  std::ostringstream out;
  out << "scenario,mode,flows_total,flows_success,pct_success,pct_success_weighted\r\n";
  for (const SuccessReport& r : reports) {
    out << csv_field(r.scenario.to_string()) << ',' << to_string(r.mode) << ',' << r.flows_total << ','
        << r.flows_success << ',' << r.pct_success.to_decimal(4) << ',' << r.pct_success_weighted.to_decimal(4)
        << "\r\n";
  }
  return out.str();
}

std::string render_success_report(std::span<const SuccessReport> reports, const Topology& topology,
                                  const FlowSet& flows) {
  ordered_json doc = ordered_json::array();
  for (const SuccessReport& r : reports) {
    ordered_json js;
    js["scenario"] = r.scenario.failed.members();
    js["mode"] = std::string(to_string(r.mode));
    js["flows_total"] = r.flows_total;
    js["flows_success"] = r.flows_success;
    js["pct_success"] = r.pct_success.to_decimal(4);
    js["pct_success_weighted"] = r.pct_success_weighted.to_decimal(4);
    ordered_json failed = ordered_json::array();
    for (std::size_t i = 0; i < r.success.size() && i < flows.size(); ++i) {
      if (!r.success[i]) failed.push_back({node_name(topology, flows[i].source), node_name(topology, flows[i].target)});
    }
    js["failed_flows"] = std::move(failed);
    doc.push_back(std::move(js));
  }
  return doc.dump(2) + "\n";
}

}  // namespace sovplan::io
