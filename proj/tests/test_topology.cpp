#include <random>

#include "doctest.h"
#include "sovplan/error.hpp"
#include "sovplan/topology.hpp"
#include "support/fixtures.hpp"

using namespace sovplan;

namespace {

const char* kSampleDoc = R"({
  "name": "sample",
  "nodes": [{"id": 0, "label": "S"}, {"id": 1, "label": "A"}, {"id": 2, "label": "B"}, {"id": 3, "label": "C"},
            {"id": 4, "label": "D"}, {"id": 5, "label": "E"}, {"id": 6, "label": "F"}, {"id": 7, "label": "T"}],
  "edges": [{"a": 0, "b": 1}, {"a": 0, "b": 2}, {"a": 0, "b": 3}, {"a": 0, "b": 6}, {"a": 1, "b": 2},
            {"a": 1, "b": 4}, {"a": 2, "b": 5}, {"a": 3, "b": 5}, {"a": 4, "b": 7}, {"a": 5, "b": 7},
            {"a": 6, "b": 7}]
})";

std::string message_of(const std::string& doc) {
  try {
    parse_topology(doc);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parse the example network and read its degrees") {
  Topology t = parse_topology(kSampleDoc);
  CHECK(t.name() == "sample");
  CHECK(t.num_nodes() == 8);
  CHECK(t.num_edges() == 11);
  const std::map<std::string, std::size_t> expected{{"S", 4}, {"A", 3}, {"B", 3}, {"C", 2},
                                                    {"D", 2}, {"E", 3}, {"F", 2}, {"T", 3}};
  for (const auto& [label, degree] : expected) {
    auto id = t.find_label(label);
    REQUIRE(id);
    CHECK(t.degree(*id) == degree);
  }
  CHECK(t == fixtures::sample_network());
}

TEST_CASE("minimal two-node document") {
  Topology t = parse_topology(R"({"name":"pair","nodes":[{"id":0},{"id":1}],"edges":[{"a":0,"b":1}]})");
  CHECK(t.num_nodes() == 2);
  CHECK(t.num_edges() == 1);
  CHECK(t.display_name(1) == "1");
}

TEST_CASE("parse errors carry their location") {
  CHECK(message_of(R"({"nodes":[{"id":0},{"id":1},{"id":2},{"id":3}],"edges":[{"a":3,"b":3}]})")
            .find("edges[0]: self-loop") != std::string::npos);
  CHECK(message_of(R"({"nodes":[{"id":0},{"id":1}],"edges":[{"a":0,"b":1},{"a":1,"b":0}]})")
            .find("edges[1]: duplicate edge") != std::string::npos);
  CHECK(message_of(R"({"nodes":[{"id":0},{"id":1}],"edges":[{"a":0,"b":5}]})").find("edges[0]: dangling") !=
        std::string::npos);
  CHECK(message_of(R"({"nodes":[{"id":0},{"id":2}],"edges":[]})").find("nodes[1].id") != std::string::npos);
  CHECK(message_of(R"({"nodes":[{"id":0},{"id":1}],"edges":[{"a":0,"b":1,"weight":-1}]})").find("weight") !=
        std::string::npos);
  CHECK(message_of(R"({"nodes": [)").find("malformed") != std::string::npos);
  CHECK(message_of(R"({"edges": []})").find("missing field 'nodes'") != std::string::npos);
}

TEST_CASE("generators") {
  Topology ring13 = generate_ring(13);
  CHECK(ring13.num_nodes() == 13);
  CHECK(ring13.num_edges() == 13);
  for (NodeId v = 0; v < 13; ++v) CHECK(ring13.degree(v) == 2);

  Topology tri = generate_ring(3);
  CHECK(tri.num_edges() == 3);
  CHECK(tri.has_edge(0, 2));
  CHECK_THROWS_AS(generate_ring(2), InputError);

  CHECK(generate_complete(10).num_edges() == 45);
  CHECK(generate_complete(2).num_edges() == 1);
  CHECK(generate_complete(4).num_edges() == 6);
  for (NodeId v = 0; v < 7; ++v) CHECK(generate_complete(7).degree(v) == 6);
  CHECK_THROWS_AS(generate_complete(1), InputError);
}

TEST_CASE("render then parse is the identity") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 40; ++i) {
    std::size_t n = 2 + i % 9;
    Topology t = fixtures::random_connected(rng, n, 0.3);
    CHECK(parse_topology(render_topology(t)) == t);
  }
  CHECK(parse_topology(render_topology(fixtures::sample_network())) == fixtures::sample_network());
  Topology weighted("w", 3, {{0, 1, 2.5}, {1, 2, 0.75}});
  CHECK(parse_topology(render_topology(weighted)) == weighted);
}

TEST_CASE("flow enumeration") {
  CHECK(enumerate_flows(generate_ring(11)).size() == 55);
  CHECK(enumerate_flows(generate_complete(2)).size() == 1);
  FlowSet flows = enumerate_flows(fixtures::sample_network());
  REQUIRE(flows.size() == 28);
  // lexicographic by (source, target)
  for (std::size_t i = 1; i < flows.size(); ++i) {
    CHECK(std::make_pair(flows[i - 1].source, flows[i - 1].target) <
          std::make_pair(flows[i].source, flows[i].target));
  }
  CHECK(flows.total_weight() == Rational(28));
}

TEST_CASE("flow weights") {
  Topology t = generate_ring(4);
  WeightTable w{{{0, 2}, Rational(5, 2)}};
  FlowSet flows = enumerate_flows(t, &w);
  CHECK(flows[1].source == 0);
  CHECK(flows[1].target == 2);
  CHECK(flows[1].weight == Rational(5, 2));
  CHECK(flows[0].weight == Rational(1));

  WeightTable unknown{{{0, 9}, Rational(1)}};
  CHECK_THROWS_AS(enumerate_flows(t, &unknown), InputError);
  WeightTable negative{{{0, 1}, Rational(-1)}};
  CHECK_THROWS_AS(enumerate_flows(t, &negative), InputError);
}

TEST_CASE("flow invariants") {
  CHECK_THROWS_AS(Flow(3, 3), InputError);
  CHECK_THROWS_AS(Flow(0, 1, Rational(-1)), InputError);
  Flow f(5, 2);
  CHECK(f.source == 2);
  CHECK(f.target == 5);
  CHECK_THROWS_AS(FlowSet({Flow(0, 1), Flow(1, 0)}), InputError);
}
