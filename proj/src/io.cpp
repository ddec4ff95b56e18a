#include "ceub/io.hpp"

#include <fstream>
#include <sstream>

namespace ceub::io {
namespace {

std::string field(const std::string& base, std::size_t index) {
  return base + "[" + std::to_string(index) + "]";
}

const json& member(const json& doc, const std::string& key, const std::string& where) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw ParseError(where.empty() ? "missing field \"" + key + "\""
                                   : where + ": missing field \"" + key + "\"");
  }
  return doc.at(key);
}

void expect_schema(const json& doc, const char* schema) {
  const json& value = member(doc, "schema", "");
  if (!value.is_string() || value.get<std::string>() != schema) {
    throw ParseError("schema: expected \"" + std::string(schema) + "\"");
  }
}

Rational read_rational(const json& value, const std::string& where) {
  if (!value.is_string()) {
    throw ParseError(where + ": rationals must be strings such as \"3/4\"");
  }
  try {
    return parse_rational(value.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what());
  }
}

Vector read_vector(const json& value, const std::string& where) {
  if (!value.is_array()) throw ParseError(where + ": expected an array");
  Vector out(static_cast<Index>(value.size()));
  for (std::size_t k = 0; k < value.size(); ++k) {
    out(static_cast<Index>(k)) = read_rational(value[k], field(where, k));
  }
  return out;
}

Matrix read_matrix(const json& value, const std::string& where) {
  if (!value.is_array() || value.empty()) throw ParseError(where + ": expected a nonempty array of rows");
  const std::size_t cols = value[0].is_array() ? value[0].size() : 0;
  Matrix out(static_cast<Index>(value.size()), static_cast<Index>(cols));
  for (std::size_t i = 0; i < value.size(); ++i) {
    const json& row = value[i];
    if (!row.is_array() || row.size() != cols) {
      throw ParseError(field(where, i) + ": expected a row of " + std::to_string(cols) + " entries");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      out(static_cast<Index>(i), static_cast<Index>(j)) =
          read_rational(row[j], field(field(where, i), j));
    }
  }
  return out;
}

std::vector<Index> read_indices(const json& value, const std::string& where) {
  if (!value.is_array()) throw ParseError(where + ": expected an array");
  std::vector<Index> out;
  for (std::size_t k = 0; k < value.size(); ++k) {
    if (!value[k].is_number_integer()) throw ParseError(field(where, k) + ": expected an integer");
    out.push_back(value[k].get<Index>());
  }
  return out;
}

bool read_bool(const json& value, const std::string& where) {
  if (!value.is_boolean()) throw ParseError(where + ": expected true or false");
  return value.get<bool>();
}

template <typename Derived>
json write_vector(const Eigen::MatrixBase<Derived>& v) {
  json out = json::array();
  for (Index k = 0; k < v.size(); ++k) out.push_back(to_string(v(k)));
  return out;
}

json write_matrix(const Matrix& m) {
  json out = json::array();
  for (Index i = 0; i < m.rows(); ++i) out.push_back(write_vector(m.row(i)));
  return out;
}

}  // namespace

EquilibriumDocument make_equilibrium_document(const Equilibrium& eq) {
  return EquilibriumDocument{eq.prices,
                             eq.budgets,
                             eq.alpha,
                             eq.lambda,
                             eq.forest.tree_of_agent,
                             eq.forest.tree_of_item,
                             eq.allocation,
                             eq.original_report.value_or(eq.report)};
}

json to_json(const Instance& inst) {
  return json{{"schema", kInstanceSchema}, {"valuations", write_matrix(inst.valuations())}};
}

json to_json(const Allocation& alloc) {
  return json{{"schema", kAllocationSchema}, {"allocation", write_matrix(alloc.matrix())}};
}

json to_json(const EquilibriumReport& report) {
  json agents = json::array();
  for (const auto& r : report.agents) {
    agents.push_back(json{{"agent", r.agent},
                          {"achieved_utility", to_string(r.achieved_utility)},
                          {"optimal_utility", to_string(r.optimal_utility)},
                          {"spend", to_string(r.spend)},
                          {"in_demand_set", r.in_demand_set}});
  }
  return json{{"pass", report.pass()},
              {"items_fully_allocated", report.items_fully_allocated},
              {"budgets_exhausted", report.budgets_exhausted},
              {"agents", agents}};
}

json to_json(const EquilibriumDocument& doc) {
  return json{{"schema", kEquilibriumSchema},
              {"prices", write_vector(doc.prices)},
              {"budgets", write_vector(doc.budgets)},
              {"alpha", write_vector(doc.alpha)},
              {"lambda", to_string(doc.lambda)},
              {"tree_of_agent", doc.tree_of_agent},
              {"tree_of_item", doc.tree_of_item},
              {"cycle_free_allocation", write_matrix(doc.cycle_free_allocation.matrix())},
              {"verification", to_json(doc.verification)}};
}

json to_json(const MaxMinResult& result, const std::string& method) {
  json out{{"schema", kMaxMinSchema},
           {"method", method},
           {"lambda", to_string(result.lambda)},
           {"allocation", write_matrix(result.allocation.matrix())}};
  if (result.prices) out["prices"] = write_vector(*result.prices);
  if (result.budgets) out["budgets"] = write_vector(*result.budgets);
  return out;
}

Instance parse_instance(const json& doc) {
  expect_schema(doc, kInstanceSchema);
  Matrix values = read_matrix(member(doc, "valuations", ""), "valuations");
  try {
    return validate_instance(values);
  } catch (const NonPositiveValuation& e) {
    throw ParseError("valuations[" + std::to_string(e.agent()) + "][" + std::to_string(e.item()) +
                     "]: valuation must be strictly positive");
  }
}

Allocation parse_allocation(const json& doc) {
  expect_schema(doc, kAllocationSchema);
  Matrix x = read_matrix(member(doc, "allocation", ""), "allocation");
  try {
    return Allocation(std::move(x));
  } catch (const InfeasibleAllocation& e) {
    throw ParseError(std::string("allocation: ") + e.what());
  }
}

EquilibriumDocument parse_equilibrium(const json& doc) {
  expect_schema(doc, kEquilibriumSchema);
  EquilibriumDocument out;
  out.prices = read_vector(member(doc, "prices", ""), "prices");
  out.budgets = read_vector(member(doc, "budgets", ""), "budgets");
  out.alpha = read_vector(member(doc, "alpha", ""), "alpha");
  out.lambda = read_rational(member(doc, "lambda", ""), "lambda");
  out.tree_of_agent = read_indices(member(doc, "tree_of_agent", ""), "tree_of_agent");
  out.tree_of_item = read_indices(member(doc, "tree_of_item", ""), "tree_of_item");
  try {
    out.cycle_free_allocation = Allocation(
        read_matrix(member(doc, "cycle_free_allocation", ""), "cycle_free_allocation"));
  } catch (const InfeasibleAllocation& e) {
    throw ParseError(std::string("cycle_free_allocation: ") + e.what());
  }

  const json& verification = member(doc, "verification", "");
  out.verification.items_fully_allocated =
      read_bool(member(verification, "items_fully_allocated", "verification"),
                "verification.items_fully_allocated");
  out.verification.budgets_exhausted =
      read_bool(member(verification, "budgets_exhausted", "verification"),
                "verification.budgets_exhausted");
  const json& agents = member(verification, "agents", "verification");
  if (!agents.is_array()) throw ParseError("verification.agents: expected an array");
  for (std::size_t k = 0; k < agents.size(); ++k) {
    const std::string where = field("verification.agents", k);
    const json& entry = agents[k];
    DemandReport r;
    const json& agent = member(entry, "agent", where);
    if (!agent.is_number_integer()) throw ParseError(where + ".agent: expected an integer");
    r.agent = agent.get<Index>();
    r.achieved_utility = read_rational(member(entry, "achieved_utility", where), where + ".achieved_utility");
    r.optimal_utility = read_rational(member(entry, "optimal_utility", where), where + ".optimal_utility");
    r.spend = read_rational(member(entry, "spend", where), where + ".spend");
    r.in_demand_set = read_bool(member(entry, "in_demand_set", where), where + ".in_demand_set");
    out.verification.agents.push_back(std::move(r));
  }
  const bool pass = read_bool(member(verification, "pass", "verification"), "verification.pass");
  if (pass != out.verification.pass()) {
    throw ParseError("verification.pass: inconsistent with the per-agent reports");
  }
  return out;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(path.string() + ": cannot open file for writing");
  out << text;
  if (!out) throw Error(path.string() + ": write failed");
}

}  // namespace ceub::io
