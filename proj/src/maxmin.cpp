#include "ceub/maxmin.hpp"

#include <algorithm>
#include <numeric>

#include "ceub/lp.hpp"

namespace ceub {
namespace {

bool equal_utilities(const Vector& u) { return (u.array() == u(0)).all(); }

}  // namespace

MaxMinResult maxmin_lp(const Instance& inst) {
  const Index n = inst.agents();
  const Index m = inst.items();
  const Index lambda = n * m;
  auto var = [m](Index i, Index j) { return i * m + j; };

  LpProblem lp(n * m + 1);
  lp.set_objective(lambda, 1);
  for (Index i = 0; i < n; ++i) {
    RowVector row = RowVector::Zero(n * m + 1);
    row(lambda) = 1;
    for (Index j = 0; j < m; ++j) row(var(i, j)) = -inst.value(i, j);
    lp.add_row(row, Relation::less_equal, 0);
  }
  for (Index j = 0; j < m; ++j) {
    RowVector row = RowVector::Zero(n * m + 1);
    for (Index i = 0; i < n; ++i) row(var(i, j)) = 1;
    lp.add_row(row, Relation::less_equal, 1);
  }
  const LpSolution solution = solve_lp(lp);
  if (solution.status != LpStatus::optimal) {
    throw InternalVerificationFailed("max-min LP did not reach an optimum");
  }

  Matrix x(n, m);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < m; ++j) x(i, j) = solution.x(var(i, j));
  }
  Allocation alloc(std::move(x));
  // Any slack item or agent above the minimum could be spread over the
  // others to raise the minimum, so an exact optimum already satisfies both.
  const Vector u = utilities(inst, alloc);
  if (!alloc.fully_allocated() || !equal_utilities(u) || u(0) != solution.objective_value) {
    throw InternalVerificationFailed("max-min LP optimum is not fully allocated with equal utilities");
  }
  return MaxMinResult{std::move(alloc), solution.objective_value};
}

MaxMinResult maxmin_two_agents(const Instance& inst) {
  if (inst.agents() != 2) throw WrongAgentCount(static_cast<std::size_t>(inst.agents()));
  const Index m = inst.items();
  const Matrix& v = inst.valuations();

  std::vector<Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Index{0});
  // Ascending v(1, j) / v(0, j): agent 0's relative favourites first.
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return v(1, a) * v(0, b) < v(1, b) * v(0, a); });

  // head = value of the sorted prefix to agent 0, tail = value of the suffix
  // after position s to agent 1.
  Rational tail = v.row(1).sum();
  Rational head = 0;
  std::size_t s = 0;
  for (; s < order.size(); ++s) {
    const Index item = order[s];
    tail -= v(1, item);
    if (head + v(0, item) >= tail) break;
    head += v(0, item);
  }
  const Index split_item = order[s];
  // v0s * share + head = v1s * (1 - share) + tail
  const Rational share = (v(1, split_item) + tail - head) / (v(0, split_item) + v(1, split_item));

  Matrix x = Matrix::Zero(2, m);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    if (pos < s) x(0, order[pos]) = 1;
    if (pos > s) x(1, order[pos]) = 1;
  }
  x(0, split_item) = share;
  x(1, split_item) = 1 - share;

  MaxMinResult result{Allocation(std::move(x)), head + v(0, split_item) * share};
  result.prices = PriceVector(v.row(0).transpose());
  result.budgets = BudgetVector(result.allocation.matrix() * *result.prices);
  result.split = SplitPoint{split_item, {share}};
  result.order = std::move(order);
  return result;
}

MaxMinResult maxmin_two_items(const Instance& inst) {
  if (inst.items() != 2) throw WrongItemCount(static_cast<std::size_t>(inst.items()));
  const Index n = inst.agents();
  const Matrix& v = inst.valuations();

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  // Descending v(i, 0) / v(i, 1): strongest relative preference for item 0 first.
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return v(a, 0) * v(b, 1) > v(b, 0) * v(a, 1); });

  // inverse_first[k] = sum over positions < k of 1 / v(., 0);
  // inverse_second[k] = sum over positions > k of 1 / v(., 1).
  std::vector<Rational> inverse_first(static_cast<std::size_t>(n) + 1, Rational(0));
  std::vector<Rational> inverse_second(static_cast<std::size_t>(n) + 1, Rational(0));
  for (Index pos = 0; pos < n; ++pos) {
    inverse_first[static_cast<std::size_t>(pos) + 1] =
        inverse_first[static_cast<std::size_t>(pos)] + 1 / v(order[static_cast<std::size_t>(pos)], 0);
  }
  for (Index pos = n - 1; pos > 0; --pos) {
    inverse_second[static_cast<std::size_t>(pos) - 1] =
        inverse_second[static_cast<std::size_t>(pos)] + 1 / v(order[static_cast<std::size_t>(pos)], 1);
  }

  MaxMinResult result{Allocation::zeros(n, 2), Rational(0)};
  Index low = 0;
  Index high = n - 1;
  std::optional<Index> found;
  Rational level;
  Rational share_first;
  Rational share_second;
  while (low <= high) {
    const Index k = low + (high - low) / 2;
    ++result.candidate_evaluations;
    const Index agent = order[static_cast<std::size_t>(k)];
    const Rational& before = inverse_first[static_cast<std::size_t>(k)];
    const Rational& after = inverse_second[static_cast<std::size_t>(k)];
    // Everyone reaches the common value W; solving the two supply equations
    // for agent k's shares gives W = (v_k0 + v_k1) / (1 + before v_k0 + after v_k1).
    const Rational w = (v(agent, 0) + v(agent, 1)) / (1 + before * v(agent, 0) + after * v(agent, 1));
    const Rational first = 1 - w * before;
    const Rational second = 1 - w * after;
    if (first < 0) {
      high = k - 1;
    } else if (second < 0) {
      low = k + 1;
    } else {
      found = k;
      level = w;
      share_first = first;
      share_second = second;
      break;
    }
  }
  if (!found) {
    throw InternalVerificationFailed("two-item search found no feasible split agent");
  }

  const Index split_agent = order[static_cast<std::size_t>(*found)];
  Matrix x = Matrix::Zero(n, 2);
  for (Index pos = 0; pos < n; ++pos) {
    const Index agent = order[static_cast<std::size_t>(pos)];
    if (pos < *found) x(agent, 0) = level / v(agent, 0);
    if (pos > *found) x(agent, 1) = level / v(agent, 1);
  }
  x(split_agent, 0) = share_first;
  x(split_agent, 1) = share_second;

  result.allocation = Allocation(std::move(x));
  result.lambda = level;
  result.prices = PriceVector(v.row(split_agent).transpose());
  result.budgets = BudgetVector(result.allocation.matrix() * *result.prices);
  result.split = SplitPoint{split_agent, {share_first, share_second}};
  result.order = std::move(order);
  return result;
}

bool check_maxmin_characterization(const Instance& inst, const Allocation& alloc) {
  return is_pareto_optimal(verify_pareto_optimal(inst, alloc)) &&
         equal_utilities(utilities(inst, alloc));
}

}  // namespace ceub
