#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ceub/market.hpp"

namespace ceub {

/// Undirected bipartite graph with an edge (i, j) for every x(i, j) > 0.
class AllocationGraph {
 public:
  AllocationGraph(Index agents, Index items, std::vector<std::pair<Index, Index>> edges);

  Index agents() const { return agents_; }
  Index items() const { return items_; }
  /// Edges as (agent, item), sorted lexicographically.
  const std::vector<std::pair<Index, Index>>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }
  bool has_edge(Index agent, Index item) const;
  /// Items adjacent to `agent`, ascending.
  const std::vector<Index>& items_of(Index agent) const {
    return items_of_[static_cast<std::size_t>(agent)];
  }
  /// Agents adjacent to `item`, ascending.
  const std::vector<Index>& agents_of(Index item) const {
    return agents_of_[static_cast<std::size_t>(item)];
  }
  /// Union-find check.
  bool is_forest() const;

 private:
  Index agents_;
  Index items_;
  std::vector<std::pair<Index, Index>> edges_;
  std::vector<std::vector<Index>> items_of_;
  std::vector<std::vector<Index>> agents_of_;
};

AllocationGraph build_graph(const Instance& inst, const Allocation& alloc);

/// i_1, j_1, i_2, j_2, ..., i_k, j_k closing back to i_1; j_l is shared by
/// i_l and i_{l+1}. All vertices distinct, k >= 2.
struct SimpleCycle {
  std::vector<Index> agents;
  std::vector<Index> items;
  std::size_t length() const { return agents.size(); }
};

/// DFS from the lowest-index agent, neighbours in ascending order.
std::optional<SimpleCycle> find_cycle(const AllocationGraph& graph);

/// Amount moved along each cycle item: agent i_l gains epsilons[l] of j_l and
/// agent i_{l+1} gives up the same amount.
struct CycleShift {
  std::vector<Rational> epsilons;
  std::pair<Index, Index> zeroed_edge;
};

/// Shifts mass around `cycle` keeping every utility fixed until an edge
/// vanishes. Throws NotParetoOptimal when the cycle improves agent i_1.
std::pair<Allocation, CycleShift> eliminate_cycle(const Instance& inst, const Allocation& alloc,
                                                  const SimpleCycle& cycle);

struct CycleFreeResult {
  Allocation allocation;
  /// Edge counts of G after each elimination, starting with the input graph.
  std::vector<std::size_t> edge_history;
};

/// Repeats find_cycle / eliminate_cycle until G(x) is a forest.
CycleFreeResult make_cycle_free_traced(const Instance& inst, const Allocation& alloc);

inline Allocation make_cycle_free(const Instance& inst, const Allocation& alloc) {
  return make_cycle_free_traced(inst, alloc).allocation;
}

}  // namespace ceub
