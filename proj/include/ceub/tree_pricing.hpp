#pragma once

#include <optional>
#include <vector>

#include "ceub/allocation_graph.hpp"

namespace ceub {

/// Connected components of a forest-shaped allocation graph. Tree ids follow
/// the lowest agent index in each tree.
struct ForestDecomposition {
  std::vector<Index> tree_of_agent;
  std::vector<Index> tree_of_item;
  /// Lowest-index agent per tree; empty for an isolated agent with no items.
  std::vector<std::optional<Index>> roots;

  Index tree_count() const { return static_cast<Index>(roots.size()); }
  bool degenerate(Index tree) const { return !roots[static_cast<std::size_t>(tree)]; }
  Index agent_tree(Index agent) const { return tree_of_agent[static_cast<std::size_t>(agent)]; }
  Index item_tree(Index item) const { return tree_of_item[static_cast<std::size_t>(item)]; }
};

/// Throws NotAForest on a cycle and NotParetoOptimal if some item has no holder.
ForestDecomposition decompose_forest(const AllocationGraph& graph);

/// Prices the items of one tree so that every agent is indifferent between her
/// adjacent items: root items at the root's valuations, then breadth-first
/// p(k) = v(i', k) * p(j') / v(i', j'). Entries outside the tree are zero.
/// `root` overrides the default root and must be an agent of the tree.
PriceVector price_tree(const Instance& inst, const Allocation& alloc,
                       const ForestDecomposition& forest, Index tree,
                       std::optional<Index> root = std::nullopt);

/// b(i) = sum_j x(i, j) p(j).
BudgetVector tree_budgets(const Allocation& alloc, const PriceVector& p);

struct TreePricing {
  PriceVector p;
  BudgetVector b;
  Vector u;
};

/// Prices every non-degenerate tree with its default root.
TreePricing price_forest(const Instance& inst, const Allocation& alloc,
                         const ForestDecomposition& forest);

}  // namespace ceub
