#include "ceub/multipliers.hpp"

#include <gtest/gtest.h>

#include "ceub/allocation_graph.hpp"
#include "ceub/instance_gen.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace ceub {
namespace {

using testing::mat;
using testing::vec;

const Matrix kDiagonal = mat({{1, 0}, {0, 1}});

TEST(GainTest, HandComputedCases) {
  // Two single-edge trees; p = b = u = 4 in each, v_min = 2.
  const Instance inst = validate_instance(mat({{4, 5}, {5, 4}}));
  const GainState state = make_gain_state(inst, Allocation(kDiagonal));
  EXPECT_EQ(state.v_min, 2);
  EXPECT_EQ(state.pricing.p, vec({4, 4}));

  const Vector alpha = vec({Rational(5, 9), Rational(4, 9)});
  // alpha_j p_j = 16/9 < alpha_i b_i = 20/9: 5 - (16/9) * 4 / (20/9).
  EXPECT_EQ(gain_ij(state, alpha, 0, 1), Rational(9, 5));
  // 5 * (16/9) / (20/9) - 4 = 0.
  EXPECT_EQ(gain_ij(state, alpha, 1, 0), 0);
  EXPECT_EQ(fixed_point_map(state, alpha), vec({Rational(25, 126), Rational(101, 126)}));

  // A fixed point of F that is not an equilibrium: both gains stay positive.
  const Vector even = vec({Rational(1, 2), Rational(1, 2)});
  EXPECT_EQ(gain_ij(state, even, 0, 1), 1);
  EXPECT_EQ(gain_ij(state, even, 1, 0), 1);
  EXPECT_EQ(fixed_point_map(state, even), even);
  EXPECT_FALSE(gain_table(state, even).all_zero());

  EXPECT_THROW(gain_ij(state, even, 0, 0), SameTree);
}

TEST(GainTest, CapAndZeroMultiplier) {
  const Instance inst = validate_instance(mat({{4, 5}, {5, 4}}));
  const GainState state = make_gain_state(inst, Allocation(kDiagonal));
  // alpha_j = 0 < alpha_i b_i, so the first case applies and the gain v = 5 is capped.
  EXPECT_EQ(gain_ij(state, vec({1, 0}), 0, 1), state.v_min);
}

TEST(MultiplierLpTest, DiagonalExamples) {
  const Instance good = validate_instance(mat({{3, 1}, {1, 3}}));
  const MultiplierSolution sol = solve_multiplier_lp(make_gain_state(good, Allocation(kDiagonal)));
  EXPECT_EQ(sol.alpha, vec({Rational(1, 2), Rational(1, 2)}));
  EXPECT_EQ(sol.lambda, Rational(1, 2));

  const Instance bad = validate_instance(mat({{1, 3}, {3, 1}}));
  EXPECT_THROW(solve_multiplier_lp(make_gain_state(bad, Allocation(kDiagonal))), InfeasibleLP);
}

TEST(SupportPipelineTest, ToyExample) {
  const Instance inst = validate_instance(mat({{1}, {99}}));
  const Equilibrium eq = support_pipeline(inst, Allocation(mat({{Rational(99, 100)}, {Rational(1, 100)}})));
  EXPECT_EQ(eq.prices, vec({1}));
  EXPECT_EQ(eq.budgets, vec({Rational(99, 100), Rational(1, 100)}));
  EXPECT_EQ(eq.alpha, vec({1}));
  EXPECT_TRUE(eq.report.market_clears());
}

TEST(SupportPipelineTest, RejectsNonParetoInput) {
  const Instance inst = validate_instance(mat({{2, 1}, {1, 2}}));
  const Rational half(1, 2);
  try {
    support_pipeline(inst, Allocation(mat({{half, half}, {half, half}})));
    FAIL() << "expected ParetoViolation";
  } catch (const ParetoViolation& e) {
    EXPECT_TRUE(std::holds_alternative<TradingCycleCertificate>(e.verdict()));
  }
}

// Independent equilibrium check: each agent's bundle is worth the LP optimum
// of her demand problem and costs exactly her budget.
void expect_equilibrium(const Instance& inst, const Allocation& x, const PriceVector& p,
                        const BudgetVector& b) {
  for (Index j = 0; j < inst.items(); ++j) {
    EXPECT_GT(p(j), 0);
    EXPECT_EQ(x.allocated(j), 1);
  }
  for (Index i = 0; i < inst.agents(); ++i) {
    EXPECT_EQ(x.bundle(i).dot(p.transpose()), b(i));
    EXPECT_EQ(utility(inst, x, i), oracle::demand_by_lp(inst, p, b(i), i)) << "agent " << i;
  }
}

TEST(SupportPipelineTest, PropertyOnGeneratedInstances) {
  int multi_tree = 0;
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    SplitMix64 rng(seed + 500);
    const Index n = static_cast<Index>(rng.below(5)) + 1;
    const Index m = static_cast<Index>(rng.below(5)) + 1;
    const Instance inst =
        oracle::random_instance(seed, n, m, seed % 3 ? default_value_grid() : oracle::small_grid(3));
    const GenMode mode = seed % 2 ? GenMode::maxmin_perturbed : GenMode::welfare;
    const Allocation y = gen_pareto_allocation(inst, seed, mode);
    const Allocation x = make_cycle_free(inst, y);
    const GainState state = make_gain_state(inst, x);
    const MultiplierSolution sol = solve_multiplier_lp(state);
    EXPECT_GT(sol.lambda, 0);
    EXPECT_EQ(sol.alpha.sum(), 1);
    EXPECT_TRUE(gain_table(state, sol.alpha).all_zero());
    EXPECT_EQ(fixed_point_map(state, sol.alpha), sol.alpha);
    Index live = 0;
    for (Index t = 0; t < state.forest.tree_count(); ++t) {
      if (state.forest.degenerate(t)) {
        EXPECT_EQ(sol.alpha(t), 0);
      } else {
        ++live;
        EXPECT_GE(sol.alpha(t), sol.lambda);
      }
    }
    if (live > 1) ++multi_tree;

    const Equilibrium eq = support_pipeline(inst, y);
    EXPECT_EQ(eq.allocation, x);
    expect_equilibrium(inst, x, eq.prices, eq.budgets);
    expect_equilibrium(inst, y, eq.prices, eq.budgets);
    ASSERT_TRUE(eq.original_report.has_value());
    EXPECT_TRUE(eq.original_report->market_clears());
  }
  EXPECT_GT(multi_tree, 10);
}

}  // namespace
}  // namespace ceub
