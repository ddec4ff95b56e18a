#pragma once

#include <optional>
#include <vector>

#include "ceub/market.hpp"

namespace ceub {

/// The item (two agents) or agent (two items) whose allocation straddles the
/// split, with its share(s).
struct SplitPoint {
  Index index = 0;
  /// Two agents: the first agent's share of item `index`.
  /// Two items: agent `index`'s shares of item 0 and item 1.
  std::vector<Rational> fraction;
};

struct MaxMinResult {
  Allocation allocation;
  /// Common utility of every agent, the optimal minimum.
  Rational lambda;
  std::optional<PriceVector> prices;
  std::optional<BudgetVector> budgets;
  std::optional<SplitPoint> split;
  /// Agents or items in the order the fast algorithms walk them.
  std::vector<Index> order;
  /// Number of split candidates solved by the two-item search.
  int candidate_evaluations = 0;
};

/// max lambda s.t. lambda <= sum_j x_ij v_ij, sum_i x_ij <= 1, x >= 0.
/// Throws InternalVerificationFailed if the optimum is not fully allocated
/// with equal utilities.
MaxMinResult maxmin_lp(const Instance& inst);

/// Two agents: sort items by v(1, j) / v(0, j), give agent 0 a prefix and
/// agent 1 the suffix, split one item so both values agree. Prices p_j = v(0, j).
/// Throws WrongAgentCount.
MaxMinResult maxmin_two_agents(const Instance& inst);

/// Two items: sort agents by v(i, 0) / v(i, 1) descending; agents before the
/// split agent get item 0, agents after get item 1, and the split agent takes
/// what remains of both. The split agent is found by binary search.
/// Prices p = (v(k, 0), v(k, 1)). Throws WrongItemCount.
MaxMinResult maxmin_two_items(const Instance& inst);

/// Pareto optimal with all utilities equal.
bool check_maxmin_characterization(const Instance& inst, const Allocation& alloc);

}  // namespace ceub
