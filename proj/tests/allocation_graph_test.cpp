#include "ceub/allocation_graph.hpp"

#include <gtest/gtest.h>

#include "ceub/instance_gen.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace ceub {
namespace {

using testing::mat;

Rational half(1, 2);

TEST(AllocationGraphTest, BuildsEdgesAndAdjacency) {
  const Instance inst = validate_instance(mat({{1, 1, 1}, {1, 1, 1}}));
  const Allocation x(mat({{half, 0, 1}, {half, 1, 0}}));
  const AllocationGraph g = build_graph(inst, x);
  EXPECT_EQ(g.edge_count(), 4u);
  EXPECT_TRUE(g.has_edge(0, 2));
  EXPECT_FALSE(g.has_edge(1, 2));
  EXPECT_EQ(g.items_of(1), (std::vector<Index>{0, 1}));
  EXPECT_EQ(g.agents_of(0), (std::vector<Index>{0, 1}));
  EXPECT_TRUE(g.is_forest());
  EXPECT_FALSE(find_cycle(g).has_value());
}

TEST(AllocationGraphTest, FindsTheFourCycle) {
  const Instance inst = validate_instance(mat({{1, 1}, {1, 1}}));
  const AllocationGraph g = build_graph(inst, Allocation(mat({{half, half}, {half, half}})));
  EXPECT_FALSE(g.is_forest());
  const auto cycle = find_cycle(g);
  ASSERT_TRUE(cycle.has_value());
  EXPECT_EQ(cycle->agents, (std::vector<Index>{0, 1}));
  EXPECT_EQ(cycle->items.size(), 2u);
  for (std::size_t l = 0; l < cycle->length(); ++l) {
    const Index next = cycle->agents[(l + 1) % cycle->length()];
    EXPECT_TRUE(g.has_edge(cycle->agents[l], cycle->items[l]));
    EXPECT_TRUE(g.has_edge(next, cycle->items[l]));
  }
}

TEST(AllocationGraphTest, EliminatesTheFourCycle) {
  const Instance inst = validate_instance(mat({{1, 1}, {1, 1}}));
  const Allocation x(mat({{half, half}, {half, half}}));
  const Allocation y = make_cycle_free(inst, x);
  EXPECT_EQ(y.matrix(), mat({{1, 0}, {0, 1}}));
  EXPECT_EQ(utilities(inst, y), utilities(inst, x));
}

TEST(AllocationGraphTest, ImprovingCycleIsRejected) {
  const Instance inst = validate_instance(mat({{2, 1}, {1, 2}}));
  const Allocation x(mat({{half, half}, {half, half}}));
  const auto cycle = find_cycle(build_graph(inst, x));
  ASSERT_TRUE(cycle.has_value());
  EXPECT_THROW(eliminate_cycle(inst, x, *cycle), NotParetoOptimal);
}

TEST(AllocationGraphTest, SingleShiftZeroesExactlyTheReportedEdge) {
  // Agents value items proportionally, so every cycle is utility neutral.
  const Instance inst = validate_instance(mat({{1, 2, 3}, {2, 4, 6}, {3, 6, 9}}));
  const Rational third(1, 3);
  const Allocation x(mat({{third, third, third}, {third, third, third}, {third, third, third}}));
  const auto cycle = find_cycle(build_graph(inst, x));
  ASSERT_TRUE(cycle.has_value());
  const auto [y, shift] = eliminate_cycle(inst, x, *cycle);
  EXPECT_EQ(utilities(inst, y), utilities(inst, x));
  EXPECT_EQ(y(shift.zeroed_edge.first, shift.zeroed_edge.second), 0);
  EXPECT_GT(x(shift.zeroed_edge.first, shift.zeroed_edge.second), 0);
  EXPECT_EQ(build_graph(inst, y).edge_count() + 1, build_graph(inst, x).edge_count());
  for (Index j = 0; j < 3; ++j) EXPECT_EQ(y.allocated(j), 1);
}

TEST(AllocationGraphTest, PropertyOnGeneratedParetoAllocations) {
  int with_cycles = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    SplitMix64 rng(seed);
    const Index n = static_cast<Index>(rng.below(5)) + 2;
    const Index m = static_cast<Index>(rng.below(5)) + 2;
    const Instance inst = oracle::random_instance(seed, n, m, oracle::small_grid(3));
    const GenMode mode = seed % 2 ? GenMode::maxmin_perturbed : GenMode::welfare;
    const Allocation x = gen_pareto_allocation(inst, seed, mode);
    const CycleFreeResult result = make_cycle_free_traced(inst, x);
    if (result.edge_history.size() > 1) ++with_cycles;
    EXPECT_TRUE(build_graph(inst, result.allocation).is_forest());
    EXPECT_EQ(utilities(inst, result.allocation), utilities(inst, x));
    EXPECT_TRUE(result.allocation.fully_allocated());
    for (std::size_t k = 1; k < result.edge_history.size(); ++k) {
      EXPECT_LT(result.edge_history[k], result.edge_history[k - 1]);
    }
    EXPECT_EQ(result.edge_history.back(), build_graph(inst, result.allocation).edge_count());
  }
  EXPECT_GT(with_cycles, 5);
}

}  // namespace
}  // namespace ceub
