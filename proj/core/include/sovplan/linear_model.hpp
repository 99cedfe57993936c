#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sovplan/assignment.hpp"
#include "sovplan/rational.hpp"
#include "sovplan/solver.hpp"

namespace sovplan {

enum class VarKind { Binary, Continuous };
enum class Sense { LessEqual, GreaterEqual, Equal };

struct LpVariable {
  std::string name;
  VarKind kind = VarKind::Binary;
};

struct LpTerm {
  std::size_t var = 0;
  std::int64_t coef = 0;
};

struct LpConstraint {
  std::string name;
  std::vector<LpTerm> terms;
  Sense sense = Sense::LessEqual;
  std::int64_t rhs = 0;
};

/// Binary program over b (node n bought from m), u (m used on path j of
/// flow r), f (path j of flow r has exactly combo x), F (flow r has combo x
/// on some path) and continuous pi_r. The logical or/and definitions are
/// linearised with integer coefficients:
///   sum_m b[m][n] = 1
///   u >= b[m][n] for n on the path;  u <= sum_n b[m][n]
///   f <= l_m for each literal;  f >= sum_m l_m - (|M| - 1)
///     with l_m = u[m] if m in x, else 1 - u[m]
///   F >= f[x][r][j] for each j;  F <= sum_j f[x][r][j]
///   S * pi_r = sum_x (S / |x|) F[x][r],  S = lcm(1..|M|)
/// Objective: maximise sum_r w_r pi_r.
struct LinearModel {
  std::vector<LpVariable> variables;
  std::vector<LpConstraint> constraints;
  std::vector<std::pair<std::size_t, Rational>> objective;

  std::uint32_t num_manufacturers = 0;
  std::size_t num_nodes = 0;
  std::size_t num_paths = 0;  // over all flows
  std::size_t num_flows = 0;
  std::size_t num_combos = 0;

  std::size_t b_count() const { return num_manufacturers * num_nodes; }
  std::size_t u_count() const { return num_manufacturers * num_paths; }
  std::size_t f_count() const { return num_combos * num_paths; }
  std::size_t F_count() const { return num_combos * num_flows; }

  std::size_t b_index(ManufacturerId m, NodeId n) const { return m * num_nodes + n; }
  std::size_t u_index(ManufacturerId m, std::size_t path) const {
    return b_count() + path * num_manufacturers + m;
  }
  std::size_t f_index(std::size_t combo, std::size_t path) const {
    return b_count() + u_count() + path * num_combos + combo;
  }
  std::size_t F_index(std::size_t combo, std::size_t flow) const {
    return b_count() + u_count() + f_count() + flow * num_combos + combo;
  }
  std::size_t pi_index(std::size_t flow) const { return b_count() + u_count() + f_count() + F_count() + flow; }
};

LinearModel export_linear_model(const Instance& instance);

/// CPLEX-LP text with a comment header describing the linearisation.
std::string render_lp(const LinearModel& model, const std::string& title = "");

/// Variable values implied by `assignment`: b from the assignment, then u,
/// f, F and pi from their logical definitions.
std::vector<Rational> induced_values(const Instance& instance, const LinearModel& model,
                                     const Assignment& assignment);

/// Indices of constraints not satisfied exactly by `values`.
std::vector<std::size_t> violated_constraints(const LinearModel& model, std::span<const Rational> values);

Rational objective_value(const LinearModel& model, std::span<const Rational> values);

}  // namespace sovplan
