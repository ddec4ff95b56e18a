#include "ceub/allocation_graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>

namespace ceub {

AllocationGraph::AllocationGraph(Index agents, Index items,
                                 std::vector<std::pair<Index, Index>> edges)
    : agents_(agents),
      items_(items),
      edges_(std::move(edges)),
      items_of_(static_cast<std::size_t>(agents)),
      agents_of_(static_cast<std::size_t>(items)) {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (const auto& [i, j] : edges_) {
    if (i < 0 || i >= agents_ || j < 0 || j >= items_) {
      throw DimensionMismatch("edge (" + std::to_string(i) + ", " + std::to_string(j) +
                              ") out of range");
    }
    items_of_[static_cast<std::size_t>(i)].push_back(j);
    agents_of_[static_cast<std::size_t>(j)].push_back(i);
  }
}

bool AllocationGraph::has_edge(Index agent, Index item) const {
  return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(agent, item));
}

bool AllocationGraph::is_forest() const {
  std::vector<Index> parent(static_cast<std::size_t>(agents_ + items_));
  std::iota(parent.begin(), parent.end(), Index{0});
  std::function<Index(Index)> root = [&](Index v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  };
  for (const auto& [i, j] : edges_) {
    Index a = root(i);
    Index b = root(agents_ + j);
    if (a == b) return false;
    parent[static_cast<std::size_t>(a)] = b;
  }
  return true;
}

AllocationGraph build_graph(const Instance& inst, const Allocation& alloc) {
  check_dimensions(inst, alloc);
  std::vector<std::pair<Index, Index>> edges;
  for (Index i = 0; i < alloc.agents(); ++i) {
    for (Index j = 0; j < alloc.items(); ++j) {
      if (alloc(i, j) > 0) edges.emplace_back(i, j);
    }
  }
  return AllocationGraph(alloc.agents(), alloc.items(), std::move(edges));
}

std::optional<SimpleCycle> find_cycle(const AllocationGraph& graph) {
  // Vertex ids: agents 0..n-1, items n..n+m-1.
  const Index n = graph.agents();
  const Index total = n + graph.items();
  std::vector<Index> parent(static_cast<std::size_t>(total), -1);
  std::vector<char> state(static_cast<std::size_t>(total), 0);  // 0 new, 1 on stack, 2 done
  std::vector<Index> stack;

  auto neighbours = [&](Index v) -> std::vector<Index> {
    if (v < n) {
      std::vector<Index> out;
      for (Index j : graph.items_of(v)) out.push_back(n + j);
      return out;
    }
    return graph.agents_of(v - n);
  };

  std::optional<std::vector<Index>> found;
  std::function<void(Index)> visit = [&](Index v) {
    state[static_cast<std::size_t>(v)] = 1;
    stack.push_back(v);
    for (Index w : neighbours(v)) {
      if (found) return;
      if (w == parent[static_cast<std::size_t>(v)]) continue;
      if (state[static_cast<std::size_t>(w)] == 1) {
        auto from = std::find(stack.begin(), stack.end(), w);
        found = std::vector<Index>(from, stack.end());
        return;
      }
      if (state[static_cast<std::size_t>(w)] == 0) {
        parent[static_cast<std::size_t>(w)] = v;
        visit(w);
      }
    }
    if (found) return;
    stack.pop_back();
    state[static_cast<std::size_t>(v)] = 2;
  };

  for (Index a = 0; a < n && !found; ++a) {
    if (state[static_cast<std::size_t>(a)] == 0) visit(a);
  }
  if (!found) return std::nullopt;

  std::vector<Index> walk = *found;
  if (walk.front() >= n) std::rotate(walk.begin(), walk.begin() + 1, walk.end());
  SimpleCycle cycle;
  for (std::size_t k = 0; k < walk.size(); k += 2) {
    cycle.agents.push_back(walk[k]);
    cycle.items.push_back(walk[k + 1] - n);
  }
  return cycle;
}

std::pair<Allocation, CycleShift> eliminate_cycle(const Instance& inst, const Allocation& alloc,
                                                  const SimpleCycle& cycle) {
  check_dimensions(inst, alloc);
  const std::size_t k = cycle.length();
  if (k < 2 || cycle.items.size() != k) {
    throw Error("cycle must alternate at least two agents and two items");
  }
  auto next = [k](std::size_t l) { return (l + 1) % k; };
  for (std::size_t l = 0; l < k; ++l) {
    if (alloc(cycle.agents[l], cycle.items[l]) <= 0 ||
        alloc(cycle.agents[next(l)], cycle.items[l]) <= 0) {
      throw Error("cycle uses an edge absent from the allocation graph");
    }
  }

  // epsilon_l = epsilon_1 * ratio[l]; agent i_{l+1} trades epsilon_l of j_l
  // for epsilon_{l+1} of j_{l+1} at equal value.
  std::vector<Rational> ratio(k);
  ratio[0] = 1;
  for (std::size_t l = 0; l + 1 < k; ++l) {
    const Index agent = cycle.agents[l + 1];
    ratio[l + 1] = ratio[l] * inst.value(agent, cycle.items[l]) /
                   inst.value(agent, cycle.items[l + 1]);
  }
  const Index first = cycle.agents[0];
  const Rational net = inst.value(first, cycle.items[0]) - ratio[k - 1] * inst.value(first, cycle.items[k - 1]);
  if (net != 0) {
    throw NotParetoOptimal("shifting along the cycle through agent " + std::to_string(first) +
                           " changes her utility at rate " + to_string(net) +
                           " with everyone else indifferent; one direction is a Pareto improvement");
  }

  Rational epsilon;
  std::size_t binding = 0;
  for (std::size_t l = 0; l < k; ++l) {
    Rational limit = alloc(cycle.agents[next(l)], cycle.items[l]) / ratio[l];
    if (l == 0 || limit < epsilon) {
      epsilon = limit;
      binding = l;
    }
  }

  Matrix x = alloc.matrix();
  CycleShift shift;
  for (std::size_t l = 0; l < k; ++l) {
    Rational amount = epsilon * ratio[l];
    x(cycle.agents[l], cycle.items[l]) += amount;
    x(cycle.agents[next(l)], cycle.items[l]) -= amount;
    shift.epsilons.push_back(amount);
  }
  shift.zeroed_edge = {cycle.agents[next(binding)], cycle.items[binding]};
  return {Allocation(std::move(x)), std::move(shift)};
}

CycleFreeResult make_cycle_free_traced(const Instance& inst, const Allocation& alloc) {
  CycleFreeResult result{alloc, {}};
  AllocationGraph graph = build_graph(inst, result.allocation);
  result.edge_history.push_back(graph.edge_count());
  while (auto cycle = find_cycle(graph)) {
    result.allocation = eliminate_cycle(inst, result.allocation, *cycle).first;
    graph = build_graph(inst, result.allocation);
    if (graph.edge_count() >= result.edge_history.back()) {
      throw InternalVerificationFailed("cycle elimination did not remove an edge");
    }
    result.edge_history.push_back(graph.edge_count());
  }
  return result;
}

}  // namespace ceub
