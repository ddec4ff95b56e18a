#include "ceub/tree_pricing.hpp"

#include <deque>
#include <string>

namespace ceub {

ForestDecomposition decompose_forest(const AllocationGraph& graph) {
  if (!graph.is_forest()) throw NotAForest();

  const Index n = graph.agents();
  const Index m = graph.items();
  ForestDecomposition forest;
  forest.tree_of_agent.assign(static_cast<std::size_t>(n), -1);
  forest.tree_of_item.assign(static_cast<std::size_t>(m), -1);

  for (Index start = 0; start < n; ++start) {
    if (forest.tree_of_agent[static_cast<std::size_t>(start)] >= 0) continue;
    const Index tree = forest.tree_count();
    forest.roots.push_back(graph.items_of(start).empty() ? std::nullopt
                                                         : std::optional<Index>(start));
    std::deque<Index> agents{start};
    forest.tree_of_agent[static_cast<std::size_t>(start)] = tree;
    while (!agents.empty()) {
      Index agent = agents.front();
      agents.pop_front();
      for (Index item : graph.items_of(agent)) {
        if (forest.tree_of_item[static_cast<std::size_t>(item)] >= 0) continue;
        forest.tree_of_item[static_cast<std::size_t>(item)] = tree;
        for (Index other : graph.agents_of(item)) {
          if (forest.tree_of_agent[static_cast<std::size_t>(other)] < 0) {
            forest.tree_of_agent[static_cast<std::size_t>(other)] = tree;
            agents.push_back(other);
          }
        }
      }
    }
  }
  for (Index j = 0; j < m; ++j) {
    if (forest.tree_of_item[static_cast<std::size_t>(j)] < 0) {
      throw NotParetoOptimal("item " + std::to_string(j) + " is held by nobody");
    }
  }
  return forest;
}

PriceVector price_tree(const Instance& inst, const Allocation& alloc,
                       const ForestDecomposition& forest, Index tree, std::optional<Index> root) {
  check_dimensions(inst, alloc);
  if (tree < 0 || tree >= forest.tree_count() || forest.degenerate(tree)) {
    throw Error("tree " + std::to_string(tree) + " has no items to price");
  }
  const Index start = root.value_or(*forest.roots[static_cast<std::size_t>(tree)]);
  if (forest.agent_tree(start) != tree) {
    throw Error("root agent " + std::to_string(start) + " is not in tree " + std::to_string(tree));
  }
  const AllocationGraph graph = build_graph(inst, alloc);

  PriceVector p = PriceVector::Zero(inst.items());
  std::vector<char> priced(static_cast<std::size_t>(inst.items()), 0);
  std::vector<char> reached(static_cast<std::size_t>(inst.agents()), 0);
  std::deque<Index> frontier;

  reached[static_cast<std::size_t>(start)] = 1;
  for (Index item : graph.items_of(start)) {
    p(item) = inst.value(start, item);
    priced[static_cast<std::size_t>(item)] = 1;
    frontier.push_back(item);
  }
  while (!frontier.empty()) {
    const Index anchor = frontier.front();
    frontier.pop_front();
    for (Index agent : graph.agents_of(anchor)) {
      if (reached[static_cast<std::size_t>(agent)]) continue;
      reached[static_cast<std::size_t>(agent)] = 1;
      for (Index item : graph.items_of(agent)) {
        if (priced[static_cast<std::size_t>(item)]) continue;
        p(item) = inst.value(agent, item) * p(anchor) / inst.value(agent, anchor);
        priced[static_cast<std::size_t>(item)] = 1;
        frontier.push_back(item);
      }
    }
  }
  return p;
}

BudgetVector tree_budgets(const Allocation& alloc, const PriceVector& p) {
  if (p.size() != alloc.items()) {
    throw DimensionMismatch("price vector length does not match item count");
  }
  return alloc.matrix() * p;
}

TreePricing price_forest(const Instance& inst, const Allocation& alloc,
                         const ForestDecomposition& forest) {
  TreePricing pricing;
  pricing.p = PriceVector::Zero(inst.items());
  for (Index t = 0; t < forest.tree_count(); ++t) {
    if (!forest.degenerate(t)) pricing.p += price_tree(inst, alloc, forest, t);
  }
  pricing.b = tree_budgets(alloc, pricing.p);
  pricing.u = utilities(inst, alloc);
  return pricing;
}

}  // namespace ceub
