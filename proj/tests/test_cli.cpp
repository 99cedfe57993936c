#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(SOVPLAN_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string fixture(const char* name) { return std::string(SOVPLAN_FIXTURE_DIR) + "/" + name; }

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag)
      : path(fs::temp_directory_path() / ("sovplan_cli_" + tag + "_" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
};

const std::string kSample = fixture("sample_network.json");
const std::string kSampleAssignment = fixture("sample_assignment.json");

}  // namespace

TEST_CASE("bound prints the three-manufacturer ceiling") {
  RunResult r = run("bound --manufacturers 3");
  CHECK(r.code == 0);
  CHECK(r.out == "4.8333\n");
}

TEST_CASE("score reports the worked example flow") {
  RunResult r = run("score --topology " + kSample + " --assignment " + kSampleAssignment + " --k 7");
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  bool found = false;
  for (const json& f : doc["flows"]) {
    if (f["source_name"] == "S" && f["target_name"] == "T") {
      found = true;
      CHECK(f["reward_exact"] == "7/3");
      CHECK(f["reward"].get<std::string>().starts_with("2.3333"));
      std::vector<bool> kept;
      for (const json& p : f["paths"]) kept.push_back(p["kept"].get<bool>());
      CHECK(kept == std::vector<bool>{true, true, true, false, true, false, false});
    }
  }
  CHECK(found);

  RunResult csv = run("score --format csv --topology " + kSample + " --assignment " + kSampleAssignment + " --k 7");
  CHECK(csv.code == 0);
  CHECK(csv.out.find("S,T,1,2.333333,1,S-F-T") != std::string::npos);
}

TEST_CASE("uniform ring scores one") {
  TempDir dir("ring");
  std::ofstream(dir.path / "uniform.json") << R"({"topology_name": "ring13", "num_manufacturers": 3, "assignment": [)"
                                           << [] {
                                                std::string s;
                                                for (int i = 0; i < 13; ++i)
                                                  s += (i ? "," : "") + std::string(R"({"node": )") +
                                                       std::to_string(i) + R"(, "manufacturer": 0})";
                                                return s;
                                              }()
                                           << "]}";
  for (int k : {1, 4, 10}) {
    RunResult r = run("score --topology ring:13 --assignment " + (dir.path / "uniform.json").string() + " --k " +
                      std::to_string(k));
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["psd_exact"] == "1");
  }
}

TEST_CASE("input errors exit with 2") {
  CHECK(run("score --topology " + kSample + " --assignment /does/not/exist.json --k 7").code == 2);
  CHECK(run("score --topology " + kSample + " --k 7").code == 2);
  CHECK(run("bound --manufacturers 0").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("simulate --topology " + kSample + " --assignment " + kSampleAssignment + " --mode sideways").code == 2);
  CHECK(run("simulate --topology " + kSample + " --assignment " + kSampleAssignment + " --mode kpaths").code == 2);
  CHECK(run("optimize --topology ring:2 --manufacturers 2 --k 2").code == 2);
}

TEST_CASE("nodal-degree heuristic on the example network") {
  RunResult r = run("heuristic --topology " + kSample + " --metric nd --manufacturers 2");
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  std::vector<std::string> first;
  for (const json& e : doc["assignment"]) {
    if (e["manufacturer"] == 0) first.push_back(e["label"]);
  }
  CHECK(first == std::vector<std::string>{"S", "B", "D", "T"});
}

TEST_CASE("budget exhaustion exits with 3 unless allowed") {
  const std::string base = "optimize --topology complete:7 --manufacturers 3 --k 4 --max-nodes 3";
  CHECK(run(base).code == 3);
  RunResult allowed = run(base + " --allow-heuristic-result");
  CHECK(allowed.code == 0);
  CHECK(json::parse(allowed.out)["status"] == "budget_exhausted");
}

TEST_CASE("linear model export") {
  TempDir dir("lp");
  RunResult r = run("optimize --solver export-lp --topology " + kSample + " --manufacturers 2 --k 3 --out " + dir.str());
  REQUIRE(r.code == 0);
  std::string lp = slurp(dir.path / "optimized_M2_k3.lp");
  CHECK(lp.find("Maximize") != std::string::npos);
  CHECK(lp.find("End") != std::string::npos);
}

TEST_CASE("simulate writes the success table") {
  RunResult r = run("simulate --topology " + kSample + " --assignment " + kSampleAssignment);
  REQUIRE(r.code == 0);
  CHECK(r.out.starts_with("scenario,mode,flows_total,flows_success,pct_success,pct_success_weighted\r\n[0],residual,28,"));
  std::size_t rows = 0;
  for (char c : r.out) rows += c == '\n';
  CHECK(rows == 7);
}

TEST_CASE("sweep produces one assignment per cell, reproducibly") {
  TempDir a("sweep_a");
  TempDir b("sweep_b");
  const std::string args = "sweep --topology " + kSample + " --manufacturers 2,3,4,5 --k 2,4,6,8,10 --out ";
  REQUIRE(run(args + a.str() + " --threads 3").code == 0);
  REQUIRE(run(args + b.str() + " --threads 1").code == 0);

  std::size_t assignments = 0;
  for (const auto& e : fs::directory_iterator(a.path / "assignments")) assignments += e.is_regular_file();
  CHECK(assignments == 20);

  std::size_t files = 0;
  for (const auto& e : fs::recursive_directory_iterator(a.path)) {
    if (!e.is_regular_file()) continue;
    ++files;
    fs::path twin = b.path / fs::relative(e.path(), a.path);
    CHECK_MESSAGE(slurp(e.path()) == slurp(twin), e.path().string());
  }
  CHECK(files == 20 + 20 + 12 + 2);

  // every emitted assignment re-scores to its recorded objective
  for (const auto& e : fs::directory_iterator(a.path / "results")) {
    json result = json::parse(slurp(e.path()));
    fs::path assignment = a.path / "assignments" / e.path().filename();
    RunResult score = run("score --topology " + kSample + " --assignment " + assignment.string() + " --k " +
                          std::to_string(result["k"].get<int>()));
    REQUIRE(score.code == 0);
    CHECK(json::parse(score.out)["psd_exact"] == result["psd_exact"]);
    CHECK(result["status"] == "optimal");
  }

  // the optimized series dominates every heuristic point-wise
  std::istringstream csv(slurp(a.path / "psd_vs_k.csv"));
  std::string line;
  std::getline(csv, line);
  std::map<std::string, double> optimized;
  std::vector<std::pair<std::string, double>> others;
  while (std::getline(csv, line)) {
    std::vector<std::string> cols;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cols.push_back(c);
    REQUIRE(cols.size() == 5);
    std::string key = cols[0] + "/" + cols[1];
    if (cols[2] == "optimized") optimized[key] = std::stod(cols[3]);
    else others.emplace_back(key, std::stod(cols[3]));
  }
  CHECK(optimized.size() == 20);
  CHECK(others.size() == 60);
  for (const auto& [key, psd] : others) CHECK(psd <= optimized[key]);
}

TEST_CASE("local sweep is reproducible for a fixed seed") {
  TempDir a("local_a");
  TempDir b("local_b");
  const std::string args = "sweep --solver local --seed 5 --restarts 4 --topology ring:7 --manufacturers 2,3 --k 2,4 --out ";
  REQUIRE(run(args + a.str()).code == 0);
  REQUIRE(run(args + b.str()).code == 0);
  CHECK(slurp(a.path / "psd_vs_k.csv") == slurp(b.path / "psd_vs_k.csv"));
  CHECK(slurp(a.path / "success.csv") == slurp(b.path / "success.csv"));
  for (const char* cell : {"optimized_M2_k2.json", "optimized_M3_k4.json"}) {
    CHECK(slurp(a.path / "results" / cell) == slurp(b.path / "results" / cell));
  }
}
