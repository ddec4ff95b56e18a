#pragma once

// Test-only reference computations. None of these call into the code paths
// they are used to check.

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "ceub/instance_gen.hpp"
#include "ceub/lp.hpp"
#include "ceub/market.hpp"

namespace ceub::oracle {

/// Exact Gauss-Jordan solve of a square system; empty when singular.
inline std::optional<Vector> solve_square(Matrix a, Vector b) {
  const Index n = a.rows();
  for (Index col = 0; col < n; ++col) {
    Index pivot = -1;
    for (Index r = col; r < n; ++r) {
      if (a(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return std::nullopt;
    a.row(col).swap(a.row(pivot));
    std::swap(b(col), b(pivot));
    const Rational scale = a(col, col);
    a.row(col) /= scale;
    b(col) /= scale;
    for (Index r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0) continue;
      const Rational factor = a(r, col);
      a.row(r) -= factor * a.row(col);
      b(r) -= factor * b(col);
    }
  }
  return b;
}

struct VertexOptimum {
  bool feasible = false;
  Rational objective;
};

/// Best objective over all basic solutions of a bounded LP: every choice of
/// `variables` constraints (rows or bounds) held with equality.
inline VertexOptimum enumerate_vertices(const LpProblem& lp) {
  const Index nv = lp.variables();
  std::vector<RowVector> rows;
  std::vector<Rational> rhs;
  for (Index k = 0; k < lp.rows(); ++k) {
    rows.push_back(lp.row(k));
    rhs.push_back(lp.rhs(k));
  }
  for (Index v = 0; v < nv; ++v) {
    RowVector unit = RowVector::Zero(nv);
    unit(v) = 1;
    rows.push_back(unit);
    rhs.push_back(lp.lower(v));
    if (lp.upper(v)) {
      rows.push_back(unit);
      rhs.push_back(*lp.upper(v));
    }
  }
  VertexOptimum best;
  std::vector<int> choose(rows.size(), 0);
  std::fill(choose.end() - nv, choose.end(), 1);
  do {
    Matrix a(nv, nv);
    Vector b(nv);
    Index r = 0;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (!choose[k]) continue;
      a.row(r) = rows[k];
      b(r) = rhs[k];
      ++r;
    }
    auto point = solve_square(a, b);
    if (!point || !satisfies(lp, *point)) continue;
    Rational value = lp.objective().dot(*point);
    if (!best.feasible || value > best.objective) {
      best.feasible = true;
      best.objective = value;
    }
  } while (std::next_permutation(choose.begin(), choose.end()));
  return best;
}

/// max sum_j z_j v(i, j) s.t. sum_j z_j p_j <= budget, 0 <= z <= 1, via the LP.
inline Rational demand_by_lp(const Instance& inst, const PriceVector& p, const Rational& budget,
                             Index agent) {
  LpProblem lp(inst.items());
  lp.set_objective(inst.valuations().row(agent).transpose());
  lp.add_row(p.transpose(), Relation::less_equal, budget);
  for (Index j = 0; j < inst.items(); ++j) lp.set_upper(j, 1);
  return solve_lp(lp).objective_value;
}

/// Best utility over every buying order (each item bought as fully as the
/// remaining budget allows).
inline Rational demand_by_orders(const Instance& inst, const PriceVector& p,
                                 const Rational& budget, Index agent) {
  std::vector<Index> order(static_cast<std::size_t>(inst.items()));
  for (Index j = 0; j < inst.items(); ++j) order[static_cast<std::size_t>(j)] = j;
  Rational best = 0;
  do {
    Rational left = budget;
    Rational total = 0;
    for (Index j : order) {
      const Rational take = std::min(Rational(1), left / p(j));
      total += take * inst.value(agent, j);
      left -= take * p(j);
    }
    best = std::max(best, total);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

/// Moves `step` of the first cycle item around the certified trading cycle:
/// every agent but the first stays indifferent.
inline Matrix execute_trade(const Instance& inst, const Allocation& alloc,
                            const TradingCycleCertificate& cert) {
  std::vector<Index> agents;
  std::vector<Index> items;
  for (std::size_t k = 0; k < cert.vertices.size(); k += 2) {
    agents.push_back(cert.vertices[k].index);
    items.push_back(cert.vertices[k + 1].index);
  }
  const std::size_t k = agents.size();
  // delta[l]: amount of items[l] moved from agents[l+1] to agents[l].
  std::vector<Rational> delta(k);
  delta[0] = 1;
  for (std::size_t l = 1; l < k; ++l) {
    const Index giver = agents[l];
    delta[l] = delta[l - 1] * inst.value(giver, items[l - 1]) / inst.value(giver, items[l]);
  }
  Rational scale;
  bool first = true;
  for (std::size_t l = 0; l < k; ++l) {
    const Rational room = alloc(agents[(l + 1) % k], items[l]) / delta[l];
    if (first || room < scale) scale = room;
    first = false;
  }
  scale /= 2;
  Matrix x = alloc.matrix();
  for (std::size_t l = 0; l < k; ++l) {
    x(agents[l], items[l]) += delta[l] * scale;
    x(agents[(l + 1) % k], items[l]) -= delta[l] * scale;
  }
  return x;
}

/// All fully allocated n x m allocations whose entries are multiples of
/// 1 / steps.
inline std::vector<Matrix> grid_allocations(Index n, Index m, int steps) {
  std::vector<std::vector<Rational>> columns;
  std::function<void(Index, int, std::vector<Rational>&)> split = [&](Index agent, int left,
                                                                     std::vector<Rational>& col) {
    if (agent == n - 1) {
      col.push_back(Rational(left, steps));
      columns.push_back(col);
      col.pop_back();
      return;
    }
    for (int take = 0; take <= left; ++take) {
      col.push_back(Rational(take, steps));
      split(agent + 1, left - take, col);
      col.pop_back();
    }
  };
  std::vector<Rational> scratch;
  split(0, steps, scratch);

  std::vector<Matrix> out;
  std::vector<std::size_t> pick(static_cast<std::size_t>(m), 0);
  for (;;) {
    Matrix x(n, m);
    for (Index j = 0; j < m; ++j) {
      for (Index i = 0; i < n; ++i) {
        x(i, j) = columns[pick[static_cast<std::size_t>(j)]][static_cast<std::size_t>(i)];
      }
    }
    out.push_back(x);
    std::size_t pos = 0;
    while (pos < pick.size() && ++pick[pos] == columns.size()) pick[pos++] = 0;
    if (pos == pick.size()) break;
  }
  return out;
}

/// True when some grid allocation Pareto-dominates `x`.
inline bool dominated_on_grid(const Instance& inst, const Matrix& x,
                              const std::vector<Matrix>& grid) {
  const Vector base = x.cwiseProduct(inst.valuations()).rowwise().sum();
  for (const Matrix& z : grid) {
    const Vector other = z.cwiseProduct(inst.valuations()).rowwise().sum();
    bool weakly = true;
    bool strictly = false;
    for (Index i = 0; i < base.size(); ++i) {
      if (other(i) < base(i)) {
        weakly = false;
        break;
      }
      if (other(i) > base(i)) strictly = true;
    }
    if (weakly && strictly) return true;
  }
  return false;
}

/// Largest min-utility over grid allocations with step 1 / steps.
inline Rational maxmin_on_grid(const Instance& inst, int steps) {
  Rational best = -1;
  for (const Matrix& x : grid_allocations(inst.agents(), inst.items(), steps)) {
    best = std::max(best, x.cwiseProduct(inst.valuations()).rowwise().sum().minCoeff());
  }
  return best;
}

/// Instance drawn from a caller-chosen grid.
inline Instance random_instance(std::uint64_t seed, Index n, Index m,
                                std::vector<Rational> grid = default_value_grid()) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.agents = n;
  cfg.items = m;
  cfg.value_grid = std::move(grid);
  return gen_instance(cfg);
}

inline std::vector<Rational> small_grid(long top) {
  std::vector<Rational> grid;
  for (long k = 1; k <= top; ++k) grid.emplace_back(k);
  return grid;
}

}  // namespace ceub::oracle
