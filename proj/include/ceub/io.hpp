#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ceub/market.hpp"
#include "ceub/maxmin.hpp"
#include "ceub/multipliers.hpp"

namespace ceub::io {

using nlohmann::json;

inline constexpr const char* kInstanceSchema = "ceub/instance/v1";
inline constexpr const char* kAllocationSchema = "ceub/allocation/v1";
inline constexpr const char* kEquilibriumSchema = "ceub/equilibrium/v1";
inline constexpr const char* kMaxMinSchema = "ceub/maxmin/v1";

/// Everything an equilibrium file carries.
struct EquilibriumDocument {
  PriceVector prices;
  BudgetVector budgets;
  Vector alpha;
  Rational lambda;
  std::vector<Index> tree_of_agent;
  std::vector<Index> tree_of_item;
  Allocation cycle_free_allocation = Allocation::zeros(0, 0);
  /// Demand reports for the allocation that was priced.
  EquilibriumReport verification;
};

EquilibriumDocument make_equilibrium_document(const Equilibrium& eq);

json to_json(const Instance& inst);
json to_json(const Allocation& alloc);
json to_json(const EquilibriumDocument& doc);
/// `method` is "lp", "two_agents" or "two_items".
json to_json(const MaxMinResult& result, const std::string& method);
json to_json(const EquilibriumReport& report);

/// Readers throw ParseError naming the offending field.
Instance parse_instance(const json& doc);
Allocation parse_allocation(const json& doc);
EquilibriumDocument parse_equilibrium(const json& doc);

/// Canonical text: two-space indent, sorted keys, trailing newline.
std::string dump(const json& doc);

json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace ceub::io
