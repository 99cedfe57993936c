#include "sovplan/linear_model.hpp"

#include <sstream>

#include "sovplan/error.hpp"

namespace sovplan {

namespace {

std::string idx(std::initializer_list<std::size_t> parts) {
  std::string s;
  for (std::size_t p : parts) {
    s += '_';
    s += std::to_string(p);
  }
  return s;
}

/// Exact decimal when the denominator is 2^a 5^b, 17 significant digits
/// otherwise.
std::string lp_number(const Rational& r) {
  std::int64_t d = r.den();
  int digits = 0;
  while (d % 10 == 0) d /= 10, ++digits;
  while (d % 2 == 0) d /= 2, ++digits;
  while (d % 5 == 0) d /= 5, ++digits;
  if (d == 1) {
    std::string s = r.to_decimal(digits);
    return s;
  }
  std::ostringstream os;
  os.precision(17);
  os << r.to_double();
  return os.str();
}

}  // namespace

LinearModel export_linear_model(const Instance& inst) {
  LinearModel model;
  const std::uint32_t M = inst.num_manufacturers;
  model.num_manufacturers = M;
  model.num_nodes = inst.topology.num_nodes();
  model.num_flows = inst.path_sets.size();
  model.num_combos = inst.combos.size();

  std::vector<std::size_t> flow_of_path;
  std::vector<std::size_t> path_j;
  std::vector<std::size_t> first_path(model.num_flows + 1, 0);
  for (std::size_t r = 0; r < model.num_flows; ++r) {
    first_path[r] = flow_of_path.size();
    for (std::size_t j = 0; j < inst.path_sets[r].paths.size(); ++j) {
      flow_of_path.push_back(r);
      path_j.push_back(j);
    }
  }
  first_path[model.num_flows] = flow_of_path.size();
  model.num_paths = flow_of_path.size();

  std::vector<std::string> words;
  for (Combo c : inst.combos) words.push_back(c.to_word(M));

  auto& vars = model.variables;
  for (ManufacturerId m = 0; m < M; ++m)
    for (NodeId n = 0; n < model.num_nodes; ++n) vars.push_back({"b" + idx({m, n}), VarKind::Binary});
  for (std::size_t g = 0; g < model.num_paths; ++g)
    for (ManufacturerId m = 0; m < M; ++m)
      vars.push_back({"u" + idx({m, flow_of_path[g], path_j[g]}), VarKind::Binary});
  for (std::size_t g = 0; g < model.num_paths; ++g)
    for (std::size_t x = 0; x < model.num_combos; ++x)
      vars.push_back({"f_" + words[x] + idx({flow_of_path[g], path_j[g]}), VarKind::Binary});
  for (std::size_t r = 0; r < model.num_flows; ++r)
    for (std::size_t x = 0; x < model.num_combos; ++x)
      vars.push_back({"F_" + words[x] + idx({r}), VarKind::Binary});
  for (std::size_t r = 0; r < model.num_flows; ++r) vars.push_back({"pi" + idx({r}), VarKind::Continuous});

  auto& cons = model.constraints;

  // one manufacturer per node
  for (NodeId n = 0; n < model.num_nodes; ++n) {
    LpConstraint c{"assign" + idx({n}), {}, Sense::Equal, 1};
    for (ManufacturerId m = 0; m < M; ++m) c.terms.push_back({model.b_index(m, n), 1});
    cons.push_back(std::move(c));
  }

  // u = OR of b over the path interior
  for (std::size_t g = 0; g < model.num_paths; ++g) {
    const auto interior = inst.path_sets[flow_of_path[g]].paths[path_j[g]].interior();
    const std::string tag = idx({flow_of_path[g], path_j[g]});
    for (ManufacturerId m = 0; m < M; ++m) {
      const std::size_t u = model.u_index(m, g);
      for (NodeId n : interior) {
        cons.push_back({"or_lo" + idx({m}) + tag + idx({n}), {{u, 1}, {model.b_index(m, n), -1}}, Sense::GreaterEqual, 0});
      }
      LpConstraint hi{"or_hi" + idx({m}) + tag, {{u, 1}}, Sense::LessEqual, 0};
      for (NodeId n : interior) hi.terms.push_back({model.b_index(m, n), -1});
      cons.push_back(std::move(hi));
    }
  }

  // f = AND of literals
  for (std::size_t g = 0; g < model.num_paths; ++g) {
    const std::string tag = idx({flow_of_path[g], path_j[g]});
    for (std::size_t x = 0; x < model.num_combos; ++x) {
      const Combo combo = inst.combos[x];
      const std::size_t f = model.f_index(x, g);
      LpConstraint lo{"and_lo_" + words[x] + tag, {{f, 1}}, Sense::GreaterEqual,
                      1 - static_cast<std::int64_t>(combo.size())};
      for (ManufacturerId m = 0; m < M; ++m) {
        const std::size_t u = model.u_index(m, g);
        if (combo.contains(m)) {
          // f <= u
          cons.push_back({"and_hi_" + words[x] + tag + idx({m}), {{f, 1}, {u, -1}}, Sense::LessEqual, 0});
          lo.terms.push_back({u, -1});
        } else {
          // f <= 1 - u
          cons.push_back({"and_hi_" + words[x] + tag + idx({m}), {{f, 1}, {u, 1}}, Sense::LessEqual, 1});
          lo.terms.push_back({u, 1});
        }
      }
      cons.push_back(std::move(lo));
    }
  }

  // F = OR of f over the flow's paths
  for (std::size_t r = 0; r < model.num_flows; ++r) {
    for (std::size_t x = 0; x < model.num_combos; ++x) {
      const std::size_t F = model.F_index(x, r);
      LpConstraint hi{"any_hi_" + words[x] + idx({r}), {{F, 1}}, Sense::LessEqual, 0};
      for (std::size_t g = first_path[r]; g < first_path[r + 1]; ++g) {
        cons.push_back({"any_lo_" + words[x] + idx({r, path_j[g]}), {{F, 1}, {model.f_index(x, g), -1}},
                        Sense::GreaterEqual, 0});
        hi.terms.push_back({model.f_index(x, g), -1});
      }
      cons.push_back(std::move(hi));
    }
  }

  // flow reward, scaled to integer coefficients
  const std::int64_t S = inst.reward_scale;
  for (std::size_t r = 0; r < model.num_flows; ++r) {
    LpConstraint c{"reward" + idx({r}), {{model.pi_index(r), S}}, Sense::Equal, 0};
    for (std::size_t x = 0; x < model.num_combos; ++x) {
      c.terms.push_back({model.F_index(x, r), -(S / inst.combos[x].size())});
    }
    cons.push_back(std::move(c));
  }

  for (std::size_t r = 0; r < model.num_flows; ++r) {
    model.objective.emplace_back(model.pi_index(r), inst.flows[r].weight);
  }
  return model;
}

std::string render_lp(const LinearModel& model, const std::string& title) {
  std::ostringstream out;
  out << "\\ Manufacturer assignment for path-set diversity";
  if (!title.empty()) out << ": " << title;
  out << "\n"
      << "\\ |M| = " << model.num_manufacturers << ", |V| = " << model.num_nodes << ", flows = " << model.num_flows
      << ", paths = " << model.num_paths << ", combos = " << model.num_combos << "\n"
      << "\\ b_m_n       node n bought from manufacturer m; sum_m b_m_n = 1\n"
      << "\\ u_m_r_j     m used on path j of flow r: u >= b_m_n (n on path), u <= sum_n b_m_n\n"
      << "\\ f_x_r_j     path j of flow r has combo x (word x_0..x_{M-1}):\n"
      << "\\             f <= l_m for each m, f >= sum_m l_m - (|M|-1), l_m = u_m if x_m = 1 else 1 - u_m\n"
      << "\\ F_x_r       combo x on some path of flow r: F >= f_x_r_j, F <= sum_j f_x_r_j\n"
      << "\\ pi_r        flow reward: S pi_r = sum_x (S/|x|) F_x_r, S = lcm(1..|M|)\n"
      << "\\ objective   maximise sum_r w_r pi_r\n";

  auto write_terms = [&](const std::vector<LpTerm>& terms) {
    std::size_t on_line = 0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const LpTerm& t = terms[i];
      if (i > 0 || t.coef < 0) out << (t.coef < 0 ? " - " : " + ");
      std::int64_t mag = t.coef < 0 ? -t.coef : t.coef;
      if (mag != 1) out << mag << ' ';
      out << model.variables[t.var].name;
      if (++on_line == 8 && i + 1 < terms.size()) {
        out << "\n   ";
        on_line = 0;
      }
    }
  };

  out << "Maximize\n obj:";
  std::size_t on_line = 0;
  for (std::size_t i = 0; i < model.objective.size(); ++i) {
    const auto& [var, coef] = model.objective[i];
    out << (i == 0 ? " " : " + ") << lp_number(coef) << ' ' << model.variables[var].name;
    if (++on_line == 8 && i + 1 < model.objective.size()) {
      out << "\n   ";
      on_line = 0;
    }
  }
  out << "\nSubject To\n";
  for (const LpConstraint& c : model.constraints) {
    out << ' ' << c.name << ": ";
    write_terms(c.terms);
    switch (c.sense) {
      case Sense::LessEqual:
        out << " <= ";
        break;
      case Sense::GreaterEqual:
        out << " >= ";
        break;
      case Sense::Equal:
        out << " = ";
        break;
    }
    out << c.rhs << '\n';
  }
  out << "Bounds\n";
  for (const LpVariable& v : model.variables) {
    if (v.kind == VarKind::Continuous) out << ' ' << v.name << " >= 0\n";
  }
  out << "Binaries\n";
  std::size_t count = 0;
  for (const LpVariable& v : model.variables) {
    if (v.kind != VarKind::Binary) continue;
    out << ' ' << v.name;
    if (++count % 10 == 0) out << '\n';
  }
  if (count % 10 != 0) out << '\n';
  out << "End\n";
  return out.str();
}

std::vector<Rational> induced_values(const Instance& inst, const LinearModel& model, const Assignment& assignment) {
  if (assignment.num_nodes() != model.num_nodes) throw InputError("lp: assignment size does not match the model");
  std::vector<Rational> values(model.variables.size(), Rational(0));
  for (NodeId n = 0; n < model.num_nodes; ++n) {
    if (assignment[n] >= model.num_manufacturers) throw InputError("lp: manufacturer out of range");
    values[model.b_index(assignment[n], n)] = Rational(1);
  }
  std::size_t g = 0;
  for (std::size_t r = 0; r < model.num_flows; ++r) {
    std::vector<bool> present(model.num_combos, false);
    for (const Path& p : inst.path_sets[r].paths) {
      const Combo c = path_combo(p, assignment);
      for (ManufacturerId m = 0; m < model.num_manufacturers; ++m) {
        if (c.contains(m)) values[model.u_index(m, g)] = Rational(1);
      }
      for (std::size_t x = 0; x < model.num_combos; ++x) {
        if (inst.combos[x] == c) {
          values[model.f_index(x, g)] = Rational(1);
          present[x] = true;
        }
      }
      ++g;
    }
    Rational pi(0);
    for (std::size_t x = 0; x < model.num_combos; ++x) {
      if (present[x]) {
        values[model.F_index(x, r)] = Rational(1);
        pi += inst.combo_rewards[x];
      }
    }
    values[model.pi_index(r)] = pi;
  }
  return values;
}

std::vector<std::size_t> violated_constraints(const LinearModel& model, std::span<const Rational> values) {
  if (values.size() != model.variables.size()) throw InputError("lp: value vector size mismatch");
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < model.constraints.size(); ++i) {
    const LpConstraint& c = model.constraints[i];
    Rational lhs(0);
    for (const LpTerm& t : c.terms) lhs += Rational(t.coef) * values[t.var];
    const Rational rhs(c.rhs);
    bool ok = c.sense == Sense::LessEqual ? lhs <= rhs : c.sense == Sense::GreaterEqual ? lhs >= rhs : lhs == rhs;
    if (!ok) bad.push_back(i);
  }
  for (std::size_t v = 0; v < model.variables.size(); ++v) {
    if (model.variables[v].kind == VarKind::Binary && values[v] != Rational(0) && values[v] != Rational(1)) {
      throw InputError("lp: binary variable " + model.variables[v].name + " has a fractional value");
    }
  }
  return bad;
}

Rational objective_value(const LinearModel& model, std::span<const Rational> values) {
  Rational total(0);
  for (const auto& [var, coef] : model.objective) total += coef * values[var];
  return total;
}

}  // namespace sovplan
