#pragma once

#include <optional>

#include "ceub/market.hpp"
#include "ceub/tree_pricing.hpp"

namespace ceub {

/// One scaling factor per tree of the forest; isolated agents' trees carry 0.
/// Entries sum to one.
using MultiplierVector = Vector;

/// Unscaled per-tree pricing together with the data GAIN needs.
struct GainState {
  Instance instance;
  ForestDecomposition forest;
  TreePricing pricing;
  /// Half the smallest valuation.
  Rational v_min;
};

GainState make_gain_state(const Instance& inst, const Allocation& cycle_free);

/// Capped profit agent i could make by redirecting her scaled budget towards
/// item j in another tree. Throws SameTree when they share a tree and Error
/// for an agent with zero budget.
Rational gain_ij(const GainState& state, const MultiplierVector& alpha, Index agent, Index item);

struct GainTable {
  /// Zero for same-tree pairs and for agents with zero budget.
  Matrix gain_ij;
  Vector gain_j;
  Vector gain_T;

  bool all_zero() const;
};

GainTable gain_table(const GainState& state, const MultiplierVector& alpha);

/// F(alpha)_T = (alpha_T + GAIN_T) / (1 + sum GAIN).
MultiplierVector fixed_point_map(const GainState& state, const MultiplierVector& alpha);

struct MultiplierSolution {
  MultiplierVector alpha;
  Rational lambda;
};

/// max lambda  s.t.  (u_i / b_i) alpha_T(j) >= (v_ij / p_j) alpha_T(i) for i, j in
/// different trees, sum alpha = 1, lambda <= alpha_T <= 1, over the trees that
/// own items. Throws InfeasibleLP when no positive solution exists.
MultiplierSolution solve_multiplier_lp(const GainState& state);

struct Equilibrium {
  PriceVector prices;
  BudgetVector budgets;
  MultiplierVector alpha;
  Rational lambda;
  /// The cycle-free allocation the prices were built from.
  Allocation allocation;
  ForestDecomposition forest;
  EquilibriumReport report;
  /// Demand reports for the allocation handed to support_pipeline.
  std::optional<EquilibriumReport> original_report;
};

/// Scales tree prices and budgets by alpha and checks the result: every agent
/// in her demand set, all items sold, budgets spent, GAIN identically zero.
/// Throws InternalVerificationFailed otherwise.
Equilibrium assemble_equilibrium(const GainState& state, const MultiplierSolution& multipliers,
                                 const Allocation& cycle_free);

/// Raised by support_pipeline when the input fails the Pareto check.
class ParetoViolation : public NotParetoOptimal {
 public:
  explicit ParetoViolation(ParetoVerdict verdict);
  const ParetoVerdict& verdict() const { return verdict_; }

 private:
  ParetoVerdict verdict_;
};

/// Prices and budgets supporting an arbitrary Pareto-optimal allocation `y`.
/// Throws ParetoViolation, or InfeasibleLP/NotParetoOptimal from later stages.
Equilibrium support_pipeline(const Instance& inst, const Allocation& y);

}  // namespace ceub
