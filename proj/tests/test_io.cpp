#include <filesystem>

#include "doctest.h"
#include "json.hpp"
#include "sovplan/error.hpp"
#include "sovplan/io.hpp"
#include "support/fixtures.hpp"

using namespace sovplan;
using namespace fixtures;
using nlohmann::json;

TEST_CASE("assignment files round-trip") {
  Topology g = sample_network();
  std::string text = io::render_assignment(sample_assignment(), g);
  json doc = json::parse(text);
  CHECK(doc["topology_name"] == "sample");
  CHECK(doc["num_manufacturers"] == 3);
  CHECK(doc["assignment"][1]["label"] == "A");
  CHECK(doc["assignment"][4]["manufacturer"] == kBlue);
  CHECK(io::parse_assignment(text, g) == sample_assignment());
}

TEST_CASE("assignment entries may come in any order and without labels") {
  Topology ring = generate_ring(3);
  const char* text = R"({"topology_name": "ring3", "num_manufacturers": 2,
    "assignment": [{"node": 2, "manufacturer": 1}, {"node": 0, "manufacturer": 0}, {"node": 1, "manufacturer": 1}]})";
  CHECK(io::parse_assignment(text, ring) == Assignment({0, 1, 1}, 2));
}

TEST_CASE("malformed assignment files") {
  Topology ring = generate_ring(3);
  auto fails = [&](const char* text, const char* fragment) {
    try {
      io::parse_assignment(text, ring);
      FAIL("accepted: " << text);
    } catch (const InputError& e) {
      CHECK_MESSAGE(std::string(e.what()).find(fragment) != std::string::npos, e.what());
    }
  };
  fails("{", "malformed");
  fails(R"({"num_manufacturers": 0, "assignment": []})", "num_manufacturers");
  fails(R"({"num_manufacturers": 2})", "'assignment'");
  fails(R"({"num_manufacturers": 2, "assignment": [{"node": 0, "manufacturer": 2}]})", "out of range");
  fails(R"({"num_manufacturers": 2, "assignment": [{"node": 7, "manufacturer": 0}]})", "not in the topology");
  fails(R"({"num_manufacturers": 2, "assignment": [{"node": 0, "manufacturer": 0}, {"node": 0, "manufacturer": 1}]})",
        "assigned twice");
  fails(R"({"num_manufacturers": 2, "assignment": [{"node": 0, "manufacturer": 0}]})", "has no manufacturer");
}

TEST_CASE("weight files") {
  Topology ring = generate_ring(4);
  WeightTable w = io::parse_weights(R"({"weights": [{"a": 2, "b": 0, "weight": 2.5}, {"a": 1, "b": 3, "weight": "1/3"}]})", ring);
  CHECK(w.at({0, 2}) == Rational(5, 2));
  CHECK(w.at({1, 3}) == Rational(1, 3));
  CHECK_THROWS_AS(io::parse_weights(R"({"weights": [{"a": 0, "b": 1, "weight": -1}]})", ring), InputError);
  CHECK_THROWS_AS(io::parse_weights(R"({"weights": [{"a": 0, "b": 9, "weight": 1}]})", ring), InputError);
  CHECK_THROWS_AS(io::parse_weights(R"({"weights": [{"a": 0, "b": 1, "weight": 1}, {"a": 1, "b": 0, "weight": 2}]})", ring),
                  InputError);
  CHECK_THROWS_AS(io::parse_weights(R"([1, 2])", ring), InputError);
}

TEST_CASE("csv quoting") {
  CHECK(io::csv_field("plain") == "plain");
  CHECK(io::csv_field("a,b") == "\"a,b\"");
  CHECK(io::csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(io::csv_field("two\nlines") == "\"two\nlines\"");
}

TEST_CASE("success csv") {
  Topology ring = generate_ring(6);
  auto reports = simulate_all(ring, Assignment::uniform(6, 2), enumerate_flows(ring), SimMode::Residual);
  std::string csv = io::render_success_csv(reports);
  CHECK(csv == "scenario,mode,flows_total,flows_success,pct_success,pct_success_weighted\r\n"
               "[0],residual,15,6,40.0000,40.0000\r\n"
               "[1],residual,15,15,100.0000,100.0000\r\n");
}

TEST_CASE("score report documents") {
  Topology g = sample_network();
  ScoreReport r = psd_score(g, FlowSet({Flow(S, T)}), sample_assignment(), 7);
  json doc = json::parse(io::render_score_report(r, g));
  CHECK(doc.is_object());
  std::string csv = io::render_score_csv(r, g);
  CHECK(csv.starts_with("source,target,weight,flow_reward,path_index,path,combo,size,kept,duplicate_of,path_reward"));
  std::size_t lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == 8);
}

TEST_CASE("atomic writes") {
  auto dir = std::filesystem::temp_directory_path() / "sovplan_io_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  io::write_file_atomic(dir / "x.txt", "first");
  io::write_file_atomic(dir / "x.txt", "second");
  CHECK(io::read_file(dir / "x.txt") == "second");
  CHECK(std::distance(std::filesystem::directory_iterator(dir), std::filesystem::directory_iterator()) == 1);
  CHECK_THROWS_AS(io::read_file(dir / "missing.txt"), InputError);
  std::filesystem::remove_all(dir);
}
