#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "commands.hpp"
#include "sovplan/error.hpp"
#include "sovplan/io.hpp"

namespace sovplan::cli {

namespace {

struct MethodResult {
  std::string method;
  Rational psd{0};
  std::vector<SuccessReport> success;
};

struct Cell {
  std::uint32_t manufacturers = 0;
  std::size_t k = 0;
  bool exhausted = false;
  std::vector<MethodResult> methods;  // optimized first, then heuristics
  std::exception_ptr error;
};

class Progress {
 public:
  explicit Progress(std::size_t total) : total_(total) {}

  void report(const Cell& cell, const std::string& detail) {
    std::lock_guard lock(mutex_);
    ++done_;
    std::cerr << '[' << done_ << '/' << total_ << "] M=" << cell.manufacturers << " k=" << cell.k << ' ' << detail
              << '\n';
  }

 private:
  std::mutex mutex_;
  std::size_t done_ = 0;
  std::size_t total_;
};

std::string success_rows(const Cell& cell) {
  std::ostringstream out;
  for (const MethodResult& mr : cell.methods) {
    for (const SuccessReport& r : mr.success) {
      out << cell.manufacturers << ',' << cell.k << ',' << mr.method << ',' << io::csv_field(r.scenario.to_string())
          << ',' << to_string(r.mode) << ',' << r.flows_total << ',' << r.flows_success << ','
          << r.pct_success.to_decimal(4) << ',' << r.pct_success_weighted.to_decimal(4) << "\r\n";
    }
  }
  return out.str();
}

}  // namespace

ExitCode cmd_sweep(const RunConfig& config) {
  if (config.out.empty()) throw InputError("--out is required for sweep");
  if (config.solver != "exact" && config.solver != "local") throw InputError("sweep --solver must be exact or local");
  Topology topology = load_topology_source(config.topology);
  FlowSet flows = load_flows(topology, config);
  const SimMode mode = sim_mode(config);
  const std::vector<CentralityKind> kinds = centrality_kinds(config);
  std::vector<std::uint32_t> ms = config.manufacturers;
  std::vector<std::size_t> ks = config.k;
  if (ms.empty()) ms = {2, 3, 4, 5};
  if (ks.empty()) ks = {2, 4, 6, 8, 10};

  // Heuristic assignments do not depend on k.
  std::vector<CentralityRanking> rankings;
  for (CentralityKind kind : kinds) rankings.push_back(centrality_ranking(topology, kind, flows));
  for (const CentralityRanking& r : rankings) {
    for (std::uint32_t m : ms) {
      emit(config.out, "heuristics/" + std::string(to_string(r.kind)) + "_M" + std::to_string(m) + ".json",
           io::render_assignment(round_robin_assign(r, m), topology));
    }
  }

  std::vector<Cell> cells;
  for (std::uint32_t m : ms) {
    for (std::size_t k : ks) {
      Cell cell;
      cell.manufacturers = m;
      cell.k = k;
      cells.push_back(std::move(cell));
    }
  }
  Progress progress(cells.size());

  auto run_cell = [&](Cell& cell) {
    const auto start = std::chrono::steady_clock::now();
    Instance instance = build_instance(topology, flows, cell.manufacturers, cell.k);
    OptimizationResult result = optimize_instance(instance, config);
    cell.exhausted = result.solver == SolverKind::Exact && !result.proven_optimal;
    const std::string name = cell_name(cell.manufacturers, cell.k);
    emit(config.out, "assignments/" + name + ".json", io::render_assignment(result.assignment, topology));
    emit(config.out, "results/" + name + ".json", io::render_optimization_result(result, instance));

    std::optional<std::size_t> sim_k;
    if (mode == SimMode::KPaths) sim_k = cell.k;
    auto add = [&](std::string method, const Assignment& a) {
      MethodResult mr{std::move(method), evaluate_objective(instance, a).psd, {}};
      if (cell.manufacturers >= 2) mr.success = simulate_all(topology, a, flows, mode, sim_k);
      cell.methods.push_back(std::move(mr));
    };
    add("optimized", result.assignment);
    for (const CentralityRanking& r : rankings) add(std::string(to_string(r.kind)), round_robin_assign(r, cell.manufacturers));

    for (std::size_t i = 1; i < cell.methods.size(); ++i) {
      if (cell.methods[i].psd > cell.methods[0].psd && !cell.exhausted) {
        throw InvariantError(name + ": optimized assignment scores below the " + cell.methods[i].method +
                             " heuristic");
      }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream detail;
    detail << to_string(result.solver) << " psd " << result.objective.psd.to_decimal(4)
           << (result.proven_optimal ? " optimal" : "") << " (" << secs << " s)";
    progress.report(cell, detail.str());
  };

  unsigned threads = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(cells.size()));
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
          try {
            run_cell(cells[i]);
          } catch (...) {
            cells[i].error = std::current_exception();
          }
        }
      });
    }
  }
  for (const Cell& cell : cells) {
    if (cell.error) std::rethrow_exception(cell.error);
  }

  std::string psd_csv = "manufacturers,k,method,psd,psd_exact\r\n";
  const std::size_t num_methods = cells.front().methods.size();
  for (std::size_t mi = 0; mi < num_methods; ++mi) {
    for (const Cell& cell : cells) {
      const MethodResult& mr = cell.methods[mi];
      psd_csv += std::to_string(cell.manufacturers) + ',' + std::to_string(cell.k) + ',' + mr.method + ',' +
                 mr.psd.to_decimal(6) + ',' + mr.psd.to_string() + "\r\n";
    }
  }
  emit(config.out, "psd_vs_k.csv", psd_csv);

  std::string success_csv =
      "manufacturers,k,method,scenario,mode,flows_total,flows_success,pct_success,pct_success_weighted\r\n";
  for (const Cell& cell : cells) success_csv += success_rows(cell);
  emit(config.out, "success.csv", success_csv);

  bool exhausted = std::any_of(cells.begin(), cells.end(), [](const Cell& c) { return c.exhausted; });
  if (exhausted) {
    std::cerr << "sovplan: at least one cell exhausted its search budget\n";
    if (!config.allow_heuristic_result) return ExitCode::BudgetExhausted;
  }
  return ExitCode::Ok;
}

}  // namespace sovplan::cli
