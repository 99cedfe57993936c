#pragma once

#include <random>
#include <set>
#include <utility>
#include <vector>

#include "sovplan/assignment.hpp"
#include "sovplan/topology.hpp"

namespace fixtures {

// Example network with nodes S,A,B,C,D,E,F,T (ids 0..7).
enum SampleNode : sovplan::NodeId { S = 0, A, B, C, D, E, F, T };

inline sovplan::Topology sample_network() {
  std::vector<std::optional<std::string>> labels{"S", "A", "B", "C", "D", "E", "F", "T"};
  std::vector<sovplan::Edge> edges{{S, A}, {S, B}, {S, C}, {S, F}, {A, B}, {A, D},
                                   {B, E}, {C, E}, {D, T}, {E, T}, {F, T}};
  return sovplan::Topology("sample", std::move(labels), std::move(edges));
}

inline constexpr sovplan::ManufacturerId kRed = 0;
inline constexpr sovplan::ManufacturerId kYellow = 1;
inline constexpr sovplan::ManufacturerId kBlue = 2;

/// A=R, B=Y, C=Y, D=B, E=B, F=R; endpoints S and T on red.
inline sovplan::Assignment sample_assignment() {
  return sovplan::Assignment({kRed, kRed, kYellow, kYellow, kBlue, kBlue, kRed, kRed}, 3);
}

/// Random connected simple graph: a random spanning tree plus extra edges.
inline sovplan::Topology random_connected(std::mt19937_64& rng, std::size_t n, double extra_edge_prob) {
  std::vector<sovplan::Edge> edges;
  std::set<std::pair<sovplan::NodeId, sovplan::NodeId>> have;
  for (sovplan::NodeId v = 1; v < n; ++v) {
    std::uniform_int_distribution<sovplan::NodeId> pick(0, v - 1);
    sovplan::NodeId u = pick(rng);
    edges.push_back({u, v});
    have.emplace(u, v);
  }
  std::bernoulli_distribution coin(extra_edge_prob);
  for (sovplan::NodeId a = 0; a < n; ++a) {
    for (sovplan::NodeId b = a + 1; b < n; ++b) {
      if (!have.contains({a, b}) && coin(rng)) edges.push_back({a, b});
    }
  }
  return sovplan::Topology("random" + std::to_string(n), n, std::move(edges));
}

inline sovplan::Assignment random_assignment(std::mt19937_64& rng, std::size_t n, std::uint32_t m) {
  std::uniform_int_distribution<sovplan::ManufacturerId> pick(0, m - 1);
  std::vector<sovplan::ManufacturerId> a(n);
  for (auto& x : a) x = pick(rng);
  return sovplan::Assignment(std::move(a), m);
}

}  // namespace fixtures
