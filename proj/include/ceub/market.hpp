#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "ceub/errors.hpp"
#include "ceub/rational.hpp"

namespace ceub {

using Index = Eigen::Index;

/// n agents by m items with strictly positive additive valuations.
class Instance {
 public:
  const Matrix& valuations() const { return values_; }
  Index agents() const { return values_.rows(); }
  Index items() const { return values_.cols(); }
  const Rational& value(Index agent, Index item) const { return values_(agent, item); }

  friend Instance validate_instance(const Matrix& raw);

 private:
  explicit Instance(Matrix values) : values_(std::move(values)) {}
  Matrix values_;
};

/// Checks positivity of every entry. Throws EmptyMatrix or NonPositiveValuation.
Instance validate_instance(const Matrix& raw);
/// Row-major overload; also rejects ragged input with DimensionMismatch.
Instance validate_instance(const std::vector<std::vector<Rational>>& rows);

/// Fractional assignment x(i, j) of item j to agent i. Every entry lies in
/// [0, 1] and every column sums to at most one.
class Allocation {
 public:
  /// Throws InfeasibleAllocation if the box or supply constraints fail.
  explicit Allocation(Matrix x);
  static Allocation zeros(Index agents, Index items);

  const Matrix& matrix() const { return x_; }
  Index agents() const { return x_.rows(); }
  Index items() const { return x_.cols(); }
  const Rational& operator()(Index agent, Index item) const { return x_(agent, item); }
  RowVector bundle(Index agent) const { return x_.row(agent); }

  /// Total share of item j handed out.
  Rational allocated(Index item) const { return x_.col(item).sum(); }
  bool fully_allocated() const;

  friend bool operator==(const Allocation& a, const Allocation& b) {
    return a.x_.rows() == b.x_.rows() && a.x_.cols() == b.x_.cols() && a.x_ == b.x_;
  }

 private:
  Matrix x_;
};

void check_dimensions(const Instance& inst, const Allocation& alloc);

Rational utility(const Instance& inst, const Allocation& alloc, Index agent);
/// Utility of every agent, in agent order.
Vector utilities(const Instance& inst, const Allocation& alloc);

/// Best utility agent `agent` can reach with `budget` tokens at prices `p`,
/// buying fractions of at most one copy of each item. Greedy by bang-per-buck
/// v(i, j) / p(j), ties by ascending item index. Throws ZeroPrice.
Rational max_affordable_utility(const Instance& inst, const PriceVector& p,
                                const Rational& budget, Index agent);

struct DemandReport {
  Index agent = 0;
  Rational achieved_utility;
  Rational optimal_utility;
  Rational spend;
  bool in_demand_set = false;
};

DemandReport is_in_demand_set(const Instance& inst, const PriceVector& p,
                              const Rational& budget, Index agent, const RowVector& bundle);

struct EquilibriumReport {
  std::vector<DemandReport> agents;
  bool items_fully_allocated = false;
  bool budgets_exhausted = false;

  /// Every agent holds a bundle from her demand set.
  bool pass() const;
  /// pass() plus full allocation and exact budget exhaustion.
  bool market_clears() const { return pass() && items_fully_allocated && budgets_exhausted; }
  /// First agent outside her demand set, if any.
  std::optional<Index> first_failure() const;
};

EquilibriumReport verify_equilibrium(const Instance& inst, const Allocation& alloc,
                                     const PriceVector& p, const BudgetVector& b);

struct Vertex {
  enum class Kind { agent, item };
  Kind kind = Kind::agent;
  Index index = 0;

  static Vertex agent(Index i) { return {Kind::agent, i}; }
  static Vertex item(Index j) { return {Kind::item, j}; }
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// A closed exchange cycle a_0, j_0, a_1, j_1, ..., a_{k-1}, j_{k-1} (back to
/// a_0). Agent a_l receives item j_l from agent a_{l+1}, who currently holds
/// part of it. improvement_ratio is the product of v(a_l, j_l) / v(a_{l+1}, j_l);
/// a ratio above one means the trade makes someone strictly better off while
/// everybody else stays put.
struct TradingCycleCertificate {
  std::vector<Vertex> vertices;
  Rational improvement_ratio;
};

struct UnallocatedMass {
  Index item = 0;
  Rational allocated;
};

struct ParetoOptimal {};

using ParetoVerdict = std::variant<ParetoOptimal, TradingCycleCertificate, UnallocatedMass>;

/// Exact Pareto-optimality test: full allocation plus absence of an
/// improving exchange cycle, searched with a multiplicative Bellman-Ford.
ParetoVerdict verify_pareto_optimal(const Instance& inst, const Allocation& alloc);

inline bool is_pareto_optimal(const ParetoVerdict& verdict) {
  return std::holds_alternative<ParetoOptimal>(verdict);
}

}  // namespace ceub
