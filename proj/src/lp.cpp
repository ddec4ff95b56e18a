#include "ceub/lp.hpp"

#include <string>

namespace ceub {

using Eigen::Index;

LpProblem::LpProblem(Index variables)
    : objective_(Vector::Zero(variables)),
      coefficients_(0, variables),
      lower_(Vector::Zero(variables)),
      upper_(static_cast<std::size_t>(variables)) {
  if (variables <= 0) throw MalformedProblem("LP needs at least one variable");
}

void LpProblem::set_objective(Vector objective) {
  if (objective.size() != variables()) {
    throw MalformedProblem("objective has " + std::to_string(objective.size()) +
                           " coefficients, expected " + std::to_string(variables()));
  }
  objective_ = std::move(objective);
}

void LpProblem::set_objective(Index var, Rational coefficient) { objective_(var) = coefficient; }

void LpProblem::add_row(const RowVector& coefficients, Relation relation, Rational rhs) {
  if (coefficients.size() != variables()) {
    throw MalformedProblem("constraint row has " + std::to_string(coefficients.size()) +
                           " coefficients, expected " + std::to_string(variables()));
  }
  coefficients_.conservativeResize(coefficients_.rows() + 1, Eigen::NoChange);
  coefficients_.row(coefficients_.rows() - 1) = coefficients;
  relations_.push_back(relation);
  rhs_.push_back(std::move(rhs));
}

void LpProblem::set_lower(Index var, Rational bound) { lower_(var) = std::move(bound); }

void LpProblem::set_upper(Index var, Rational bound) {
  upper_[static_cast<std::size_t>(var)] = std::move(bound);
}

bool satisfies(const LpProblem& problem, const Vector& x) {
  if (x.size() != problem.variables()) return false;
  for (Index v = 0; v < x.size(); ++v) {
    if (x(v) < problem.lower(v)) return false;
    if (problem.upper(v) && x(v) > *problem.upper(v)) return false;
  }
  for (Index k = 0; k < problem.rows(); ++k) {
    Rational lhs = problem.row(k).dot(x.transpose());
    switch (problem.relation(k)) {
      case Relation::less_equal:
        if (lhs > problem.rhs(k)) return false;
        break;
      case Relation::equal:
        if (lhs != problem.rhs(k)) return false;
        break;
      case Relation::greater_equal:
        if (lhs < problem.rhs(k)) return false;
        break;
    }
  }
  return true;
}

namespace {

/// Dense tableau in canonical form: every basic column is a unit vector, the
/// last column holds the basic values and `cost` holds reduced costs (its last
/// entry is minus the current objective).
class Tableau {
 public:
  Tableau(Matrix body, std::vector<Index> basis) : body_(std::move(body)), basis_(std::move(basis)) {}

  Index rows() const { return body_.rows(); }
  Index columns() const { return body_.cols() - 1; }
  const Matrix& body() const { return body_; }
  const std::vector<Index>& basis() const { return basis_; }
  int pivots() const { return pivots_; }

  /// Installs the minimisation cost c and prices out the basic columns.
  void set_cost(const RowVector& c) {
    cost_ = RowVector::Zero(body_.cols());
    cost_.head(columns()) = c;
    for (Index r = 0; r < rows(); ++r) {
      const Rational cb = c(basis_[static_cast<std::size_t>(r)]);
      if (cb != 0) cost_ -= cb * body_.row(r);
    }
  }

  const Rational& reduced_cost(Index column) const { return cost_(column); }

  void pivot(Index row, Index column) {
    const Rational pivot_value = body_(row, column);
    body_.row(row) /= pivot_value;
    for (Index r = 0; r < rows(); ++r) {
      if (r == row) continue;
      const Rational factor = body_(r, column);
      if (factor != 0) body_.row(r) -= factor * body_.row(row);
    }
    const Rational factor = cost_(column);
    if (factor != 0) cost_ -= factor * body_.row(row);
    basis_[static_cast<std::size_t>(row)] = column;
    ++pivots_;
  }

  /// Runs Bland's rule over columns flagged in `allowed`. Returns false when
  /// an improving column has no blocking row (unbounded).
  bool minimise(const std::vector<bool>& allowed) {
    for (;;) {
      Index entering = -1;
      for (Index c = 0; c < columns(); ++c) {
        if (allowed[static_cast<std::size_t>(c)] && cost_(c) < 0) {
          entering = c;
          break;
        }
      }
      if (entering < 0) return true;

      Index leaving = -1;
      Rational best_ratio;
      for (Index r = 0; r < rows(); ++r) {
        if (body_(r, entering) <= 0) continue;
        Rational ratio = body_(r, columns()) / body_(r, entering);
        if (leaving < 0 || ratio < best_ratio ||
            (ratio == best_ratio &&
             basis_[static_cast<std::size_t>(r)] < basis_[static_cast<std::size_t>(leaving)])) {
          leaving = r;
          best_ratio = ratio;
        }
      }
      if (leaving < 0) return false;
      pivot(leaving, entering);
    }
  }

  void drop_row(Index row) {
    const Index last = rows() - 1;
    if (row != last) {
      body_.row(row).swap(body_.row(last));
      std::swap(basis_[static_cast<std::size_t>(row)], basis_[static_cast<std::size_t>(last)]);
    }
    body_.conservativeResize(last, Eigen::NoChange);
    basis_.pop_back();
  }

 private:
  Matrix body_;
  std::vector<Index> basis_;
  RowVector cost_;
  int pivots_ = 0;
};

struct StandardRow {
  RowVector coefficients;
  Relation relation;
  Rational rhs;
};

}  // namespace

LpSolution solve_lp(const LpProblem& problem) {
  const Index nv = problem.variables();

  // Substitute y = x - lower so every structural variable is y >= 0; finite
  // upper bounds become ordinary rows.
  std::vector<StandardRow> rows;
  for (Index k = 0; k < problem.rows(); ++k) {
    RowVector a = problem.row(k);
    rows.push_back({a, problem.relation(k), problem.rhs(k) - a.dot(problem.lower_bounds())});
  }
  for (Index v = 0; v < nv; ++v) {
    if (!problem.upper(v)) continue;
    RowVector a = RowVector::Zero(nv);
    a(v) = 1;
    rows.push_back({a, Relation::less_equal, *problem.upper(v) - problem.lower(v)});
  }
  for (auto& row : rows) {
    if (row.rhs < 0) {
      row.coefficients = -row.coefficients;
      row.rhs = -row.rhs;
      if (row.relation == Relation::less_equal) {
        row.relation = Relation::greater_equal;
      } else if (row.relation == Relation::greater_equal) {
        row.relation = Relation::less_equal;
      }
    }
  }

  Index slack_count = 0;
  Index artificial_count = 0;
  for (const auto& row : rows) {
    if (row.relation != Relation::equal) ++slack_count;
    if (row.relation != Relation::less_equal) ++artificial_count;
  }
  const Index row_count = static_cast<Index>(rows.size());
  const Index first_slack = nv;
  const Index first_artificial = nv + slack_count;
  const Index columns = first_artificial + artificial_count;

  Matrix body = Matrix::Zero(row_count, columns + 1);
  std::vector<Index> basis(static_cast<std::size_t>(row_count));
  Index next_slack = first_slack;
  Index next_artificial = first_artificial;
  for (Index r = 0; r < row_count; ++r) {
    const auto& row = rows[static_cast<std::size_t>(r)];
    body.row(r).head(nv) = row.coefficients;
    body(r, columns) = row.rhs;
    switch (row.relation) {
      case Relation::less_equal:
        body(r, next_slack) = 1;
        basis[static_cast<std::size_t>(r)] = next_slack++;
        break;
      case Relation::greater_equal:
        body(r, next_slack++) = -1;
        body(r, next_artificial) = 1;
        basis[static_cast<std::size_t>(r)] = next_artificial++;
        break;
      case Relation::equal:
        body(r, next_artificial) = 1;
        basis[static_cast<std::size_t>(r)] = next_artificial++;
        break;
    }
  }

  Tableau tableau(std::move(body), std::move(basis));
  LpSolution solution;

  if (artificial_count > 0) {
    RowVector phase_one = RowVector::Zero(columns);
    phase_one.tail(artificial_count).setOnes();
    tableau.set_cost(phase_one);
    tableau.minimise(std::vector<bool>(static_cast<std::size_t>(columns), true));
    if (tableau.reduced_cost(columns) != 0) {
      solution.status = LpStatus::infeasible;
      solution.pivots = tableau.pivots();
      return solution;
    }
    // Artificials still basic sit at zero: pivot them out or drop the row
    // as redundant.
    for (Index r = tableau.rows() - 1; r >= 0; --r) {
      if (tableau.basis()[static_cast<std::size_t>(r)] < first_artificial) continue;
      Index replacement = -1;
      for (Index c = 0; c < first_artificial; ++c) {
        if (tableau.body()(r, c) != 0) {
          replacement = c;
          break;
        }
      }
      if (replacement >= 0) {
        tableau.pivot(r, replacement);
      } else {
        tableau.drop_row(r);
      }
    }
  }

  RowVector phase_two = RowVector::Zero(columns);
  phase_two.head(nv) = -problem.objective().transpose();
  tableau.set_cost(phase_two);
  std::vector<bool> allowed(static_cast<std::size_t>(columns), false);
  for (Index c = 0; c < first_artificial; ++c) allowed[static_cast<std::size_t>(c)] = true;
  const bool bounded = tableau.minimise(allowed);
  solution.pivots = tableau.pivots();
  if (!bounded) {
    solution.status = LpStatus::unbounded;
    return solution;
  }

  solution.status = LpStatus::optimal;
  solution.x = problem.lower_bounds();
  for (Index r = 0; r < tableau.rows(); ++r) {
    const Index var = tableau.basis()[static_cast<std::size_t>(r)];
    if (var < nv) solution.x(var) += tableau.body()(r, tableau.columns());
  }
  solution.objective_value = problem.objective().dot(solution.x);
  return solution;
}

}  // namespace ceub
