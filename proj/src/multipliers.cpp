#include "ceub/multipliers.hpp"

#include <algorithm>
#include <string>

#include "ceub/lp.hpp"

namespace ceub {

GainState make_gain_state(const Instance& inst, const Allocation& cycle_free) {
  ForestDecomposition forest = decompose_forest(build_graph(inst, cycle_free));
  TreePricing pricing = price_forest(inst, cycle_free, forest);
  Rational v_min = inst.valuations().minCoeff() / 2;
  return GainState{inst, std::move(forest), std::move(pricing), std::move(v_min)};
}

Rational gain_ij(const GainState& state, const MultiplierVector& alpha, Index agent, Index item) {
  const Index own = state.forest.agent_tree(agent);
  const Index other = state.forest.item_tree(item);
  if (own == other) {
    throw SameTree(static_cast<std::size_t>(agent), static_cast<std::size_t>(item));
  }
  const Rational& budget = state.pricing.b(agent);
  if (budget <= 0) {
    throw Error("GAIN is undefined for agent " + std::to_string(agent) + " with zero budget");
  }
  const Rational& value = state.instance.value(agent, item);
  const Rational& u = state.pricing.u(agent);
  const Rational scaled_price = alpha(other) * state.pricing.p(item);
  const Rational scaled_budget = alpha(own) * budget;

  Rational gain;
  if (scaled_price < scaled_budget) {
    // Whole item affordable.
    gain = std::max(value - scaled_price * u / scaled_budget, Rational(0));
  } else if (alpha(other) == 0) {
    gain = value;
  } else {
    // Only a fraction is affordable.
    gain = std::max(value * scaled_budget / scaled_price - u, Rational(0));
  }
  return std::min(gain, state.v_min);
}

bool GainTable::all_zero() const {
  return (gain_ij.array() == Rational(0)).all() && (gain_j.array() == Rational(0)).all() &&
         (gain_T.array() == Rational(0)).all();
}

GainTable gain_table(const GainState& state, const MultiplierVector& alpha) {
  const Index n = state.instance.agents();
  const Index m = state.instance.items();
  GainTable table{Matrix::Zero(n, m), Vector::Zero(m), Vector::Zero(state.forest.tree_count())};
  for (Index i = 0; i < n; ++i) {
    if (state.pricing.b(i) <= 0) continue;
    for (Index j = 0; j < m; ++j) {
      if (state.forest.agent_tree(i) == state.forest.item_tree(j)) continue;
      table.gain_ij(i, j) = gain_ij(state, alpha, i, j);
    }
  }
  for (Index j = 0; j < m; ++j) {
    table.gain_j(j) = table.gain_ij.col(j).maxCoeff();
    Rational& tree_gain = table.gain_T(state.forest.item_tree(j));
    tree_gain = std::max(tree_gain, table.gain_j(j));
  }
  return table;
}

MultiplierVector fixed_point_map(const GainState& state, const MultiplierVector& alpha) {
  const GainTable table = gain_table(state, alpha);
  const Rational denominator = 1 + table.gain_T.sum();
  MultiplierVector next(alpha.size());
  for (Index t = 0; t < alpha.size(); ++t) {
    next(t) = (alpha(t) + table.gain_T(t)) / denominator;
  }
  return next;
}

MultiplierSolution solve_multiplier_lp(const GainState& state) {
  const ForestDecomposition& forest = state.forest;
  std::vector<Index> column_of_tree(static_cast<std::size_t>(forest.tree_count()), -1);
  Index active = 0;
  for (Index t = 0; t < forest.tree_count(); ++t) {
    if (!forest.degenerate(t)) column_of_tree[static_cast<std::size_t>(t)] = active++;
  }
  const Index lambda = active;
  auto column = [&](Index tree) { return column_of_tree[static_cast<std::size_t>(tree)]; };

  LpProblem lp(active + 1);
  lp.set_objective(lambda, 1);
  const Instance& inst = state.instance;
  for (Index i = 0; i < inst.agents(); ++i) {
    if (state.pricing.b(i) <= 0) continue;
    const Rational budget_rate = state.pricing.u(i) / state.pricing.b(i);
    for (Index j = 0; j < inst.items(); ++j) {
      const Index own = forest.agent_tree(i);
      const Index other = forest.item_tree(j);
      if (own == other) continue;
      RowVector row = RowVector::Zero(active + 1);
      row(column(other)) = budget_rate;
      row(column(own)) = -inst.value(i, j) / state.pricing.p(j);
      lp.add_row(row, Relation::greater_equal, 0);
    }
  }
  RowVector simplex_row = RowVector::Zero(active + 1);
  simplex_row.head(active).setOnes();
  lp.add_row(simplex_row, Relation::equal, 1);
  for (Index c = 0; c < active; ++c) {
    RowVector row = RowVector::Zero(active + 1);
    row(lambda) = 1;
    row(c) = -1;
    lp.add_row(row, Relation::less_equal, 0);
    lp.set_upper(c, 1);
  }

  const LpSolution solution = solve_lp(lp);
  if (solution.status != LpStatus::optimal || solution.objective_value <= 0) {
    throw InfeasibleLP();
  }
  MultiplierSolution result{MultiplierVector::Zero(forest.tree_count()), solution.x(lambda)};
  for (Index t = 0; t < forest.tree_count(); ++t) {
    if (column(t) >= 0) result.alpha(t) = solution.x(column(t));
  }
  return result;
}

Equilibrium assemble_equilibrium(const GainState& state, const MultiplierSolution& multipliers,
                                 const Allocation& cycle_free) {
  const ForestDecomposition& forest = state.forest;
  PriceVector prices(state.pricing.p.size());
  for (Index j = 0; j < prices.size(); ++j) {
    prices(j) = state.pricing.p(j) * multipliers.alpha(forest.item_tree(j));
  }
  BudgetVector budgets(state.pricing.b.size());
  for (Index i = 0; i < budgets.size(); ++i) {
    budgets(i) = state.pricing.b(i) * multipliers.alpha(forest.agent_tree(i));
  }

  EquilibriumReport report = verify_equilibrium(state.instance, cycle_free, prices, budgets);
  if (!report.market_clears()) {
    throw InternalVerificationFailed("scaled prices and budgets do not clear the market");
  }
  if (!gain_table(state, multipliers.alpha).all_zero()) {
    throw InternalVerificationFailed("GAIN is nonzero at the multiplier LP solution");
  }
  return Equilibrium{std::move(prices),   std::move(budgets), multipliers.alpha,
                     multipliers.lambda,  cycle_free,         forest,
                     std::move(report),   std::nullopt};
}

namespace {

std::string describe(const ParetoVerdict& verdict) {
  if (const auto* mass = std::get_if<UnallocatedMass>(&verdict)) {
    return "item " + std::to_string(mass->item) + " is only " + to_string(mass->allocated) +
           " allocated";
  }
  if (const auto* cert = std::get_if<TradingCycleCertificate>(&verdict)) {
    return "improving trading cycle with ratio " + to_string(cert->improvement_ratio);
  }
  return "Pareto optimal";
}

}  // namespace

ParetoViolation::ParetoViolation(ParetoVerdict verdict)
    : NotParetoOptimal("allocation is not Pareto optimal: " + describe(verdict)),
      verdict_(std::move(verdict)) {}

Equilibrium support_pipeline(const Instance& inst, const Allocation& y) {
  ParetoVerdict verdict = verify_pareto_optimal(inst, y);
  if (!is_pareto_optimal(verdict)) throw ParetoViolation(std::move(verdict));

  const Allocation x = make_cycle_free(inst, y);
  const GainState state = make_gain_state(inst, x);
  const MultiplierSolution multipliers = solve_multiplier_lp(state);
  Equilibrium eq = assemble_equilibrium(state, multipliers, x);

  EquilibriumReport original = verify_equilibrium(inst, y, eq.prices, eq.budgets);
  if (!original.market_clears()) {
    throw InternalVerificationFailed("equilibrium does not support the original allocation");
  }
  eq.original_report = std::move(original);
  return eq;
}

}  // namespace ceub
