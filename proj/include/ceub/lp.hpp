#pragma once

#include <optional>
#include <vector>

#include "ceub/errors.hpp"
#include "ceub/rational.hpp"

namespace ceub {

enum class Relation { less_equal, equal, greater_equal };

/// maximize objective . x  subject to  rows[k] . x (relation) rhs[k],
/// lower <= x <= upper. Lower bounds are finite (zero unless set); upper
/// bounds are optional.
class LpProblem {
 public:
  explicit LpProblem(Eigen::Index variables);

  Eigen::Index variables() const { return objective_.size(); }
  Eigen::Index rows() const { return static_cast<Eigen::Index>(relations_.size()); }

  void set_objective(Vector objective);
  void set_objective(Eigen::Index var, Rational coefficient);
  void add_row(const RowVector& coefficients, Relation relation, Rational rhs);
  void set_lower(Eigen::Index var, Rational bound);
  void set_upper(Eigen::Index var, Rational bound);

  const Vector& objective() const { return objective_; }
  RowVector row(Eigen::Index k) const { return coefficients_.row(k); }
  const Matrix& coefficients() const { return coefficients_; }
  Relation relation(Eigen::Index k) const { return relations_[static_cast<std::size_t>(k)]; }
  const Rational& rhs(Eigen::Index k) const { return rhs_[static_cast<std::size_t>(k)]; }
  const Rational& lower(Eigen::Index var) const { return lower_(var); }
  const Vector& lower_bounds() const { return lower_; }
  const std::optional<Rational>& upper(Eigen::Index var) const {
    return upper_[static_cast<std::size_t>(var)];
  }

 private:
  Vector objective_;
  Matrix coefficients_;
  std::vector<Relation> relations_;
  std::vector<Rational> rhs_;
  Vector lower_;
  std::vector<std::optional<Rational>> upper_;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  Vector x;
  Rational objective_value;
  /// Simplex pivots over both phases.
  int pivots = 0;
};

/// Two-phase primal simplex over exact rationals with Bland's pivot rule.
/// Deterministic. Throws MalformedProblem for inconsistent dimensions.
LpSolution solve_lp(const LpProblem& problem);

/// True iff x meets every row and bound exactly.
bool satisfies(const LpProblem& problem, const Vector& x);

}  // namespace ceub
