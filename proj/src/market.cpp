#include "ceub/market.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace ceub {

Instance validate_instance(const Matrix& raw) {
  if (raw.rows() == 0 || raw.cols() == 0) {
    throw EmptyMatrix();
  }
  for (Index i = 0; i < raw.rows(); ++i) {
    for (Index j = 0; j < raw.cols(); ++j) {
      if (raw(i, j) <= 0) {
        throw NonPositiveValuation(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      }
    }
  }
  return Instance(raw);
}

Instance validate_instance(const std::vector<std::vector<Rational>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw EmptyMatrix();
  }
  Matrix raw(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.front().size()) {
      throw DimensionMismatch("valuation row " + std::to_string(i) + " has " +
                              std::to_string(rows[i].size()) + " entries, expected " +
                              std::to_string(rows.front().size()));
    }
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      raw(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    }
  }
  return validate_instance(raw);
}

Allocation::Allocation(Matrix x) : x_(std::move(x)) {
  for (Index j = 0; j < x_.cols(); ++j) {
    for (Index i = 0; i < x_.rows(); ++i) {
      if (x_(i, j) < 0 || x_(i, j) > 1) {
        throw InfeasibleAllocation("x[" + std::to_string(i) + "][" + std::to_string(j) + "] = " +
                                   to_string(x_(i, j)) + " lies outside [0, 1]");
      }
    }
    if (x_.col(j).sum() > 1) {
      throw InfeasibleAllocation("item " + std::to_string(j) + " is over-allocated");
    }
  }
}

Allocation Allocation::zeros(Index agents, Index items) {
  return Allocation(Matrix::Zero(agents, items));
}

bool Allocation::fully_allocated() const {
  for (Index j = 0; j < x_.cols(); ++j) {
    if (allocated(j) != 1) return false;
  }
  return true;
}

void check_dimensions(const Instance& inst, const Allocation& alloc) {
  if (inst.agents() != alloc.agents() || inst.items() != alloc.items()) {
    throw DimensionMismatch("allocation is " + std::to_string(alloc.agents()) + "x" +
                            std::to_string(alloc.items()) + " but instance is " +
                            std::to_string(inst.agents()) + "x" + std::to_string(inst.items()));
  }
}

Rational utility(const Instance& inst, const Allocation& alloc, Index agent) {
  check_dimensions(inst, alloc);
  return alloc.matrix().row(agent).dot(inst.valuations().row(agent));
}

Vector utilities(const Instance& inst, const Allocation& alloc) {
  check_dimensions(inst, alloc);
  return alloc.matrix().cwiseProduct(inst.valuations()).rowwise().sum();
}

Rational max_affordable_utility(const Instance& inst, const PriceVector& p,
                                const Rational& budget, Index agent) {
  if (p.size() != inst.items()) {
    throw DimensionMismatch("price vector has " + std::to_string(p.size()) + " entries, expected " +
                            std::to_string(inst.items()));
  }
  for (Index j = 0; j < p.size(); ++j) {
    if (p(j) <= 0) throw ZeroPrice(static_cast<std::size_t>(j));
  }
  if (budget < 0) {
    throw Error("budget must be nonnegative");
  }

  std::vector<Index> order(static_cast<std::size_t>(inst.items()));
  std::iota(order.begin(), order.end(), Index{0});
  // Cross-multiplied bang-per-buck comparison; stable keeps index order on ties.
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return inst.value(agent, a) * p(b) > inst.value(agent, b) * p(a);
  });

  Rational remaining = budget;
  Rational total = 0;
  for (Index j : order) {
    if (remaining == 0) break;
    if (p(j) <= remaining) {
      total += inst.value(agent, j);
      remaining -= p(j);
    } else {
      total += inst.value(agent, j) * remaining / p(j);
      remaining = 0;
    }
  }
  return total;
}

DemandReport is_in_demand_set(const Instance& inst, const PriceVector& p,
                              const Rational& budget, Index agent, const RowVector& bundle) {
  if (bundle.size() != inst.items()) {
    throw DimensionMismatch("bundle has " + std::to_string(bundle.size()) +
                            " entries, expected " + std::to_string(inst.items()));
  }
  DemandReport report;
  report.agent = agent;
  report.optimal_utility = max_affordable_utility(inst, p, budget, agent);
  report.achieved_utility = bundle.dot(inst.valuations().row(agent));
  report.spend = bundle.dot(p.transpose());
  report.in_demand_set =
      report.spend <= budget && report.achieved_utility == report.optimal_utility;
  return report;
}

bool EquilibriumReport::pass() const {
  return std::all_of(agents.begin(), agents.end(),
                     [](const DemandReport& r) { return r.in_demand_set; });
}

std::optional<Index> EquilibriumReport::first_failure() const {
  for (const auto& r : agents) {
    if (!r.in_demand_set) return r.agent;
  }
  return std::nullopt;
}

EquilibriumReport verify_equilibrium(const Instance& inst, const Allocation& alloc,
                                     const PriceVector& p, const BudgetVector& b) {
  check_dimensions(inst, alloc);
  if (b.size() != inst.agents()) {
    throw DimensionMismatch("budget vector has " + std::to_string(b.size()) +
                            " entries, expected " + std::to_string(inst.agents()));
  }
  EquilibriumReport report;
  report.budgets_exhausted = true;
  for (Index i = 0; i < inst.agents(); ++i) {
    report.agents.push_back(is_in_demand_set(inst, p, b(i), i, alloc.bundle(i)));
    if (report.agents.back().spend != b(i)) report.budgets_exhausted = false;
  }
  report.items_fully_allocated = alloc.fully_allocated();
  return report;
}

ParetoVerdict verify_pareto_optimal(const Instance& inst, const Allocation& alloc) {
  check_dimensions(inst, alloc);
  const Index n = inst.agents();
  const Index m = inst.items();
  for (Index j = 0; j < m; ++j) {
    Rational total = alloc.allocated(j);
    if (total < 1) return UnallocatedMass{j, total};
  }

  // Exchange graph: agent vertices 0..n-1, item vertices n..n+m-1.
  // agent a -> item j (a receives j) with factor v(a, j);
  // item j -> agent b (b gives up j) with factor 1 / v(b, j), only if x(b, j) > 0.
  struct Edge {
    Index from;
    Index to;
    Rational factor;
  };
  std::vector<Edge> edges;
  for (Index a = 0; a < n; ++a) {
    for (Index j = 0; j < m; ++j) edges.push_back({a, n + j, inst.value(a, j)});
  }
  for (Index j = 0; j < m; ++j) {
    for (Index b = 0; b < n; ++b) {
      if (alloc(b, j) > 0) edges.push_back({n + j, b, 1 / inst.value(b, j)});
    }
  }

  const Index vertex_count = n + m;
  std::vector<Rational> best(static_cast<std::size_t>(vertex_count), Rational(1));
  std::vector<Index> pred(static_cast<std::size_t>(vertex_count), -1);
  Index updated = -1;
  for (Index round = 0; round < vertex_count; ++round) {
    updated = -1;
    for (const Edge& e : edges) {
      Rational candidate = best[static_cast<std::size_t>(e.from)] * e.factor;
      if (candidate > best[static_cast<std::size_t>(e.to)]) {
        best[static_cast<std::size_t>(e.to)] = candidate;
        pred[static_cast<std::size_t>(e.to)] = e.from;
        updated = e.to;
      }
    }
    if (updated < 0) return ParetoOptimal{};
  }

  // Still relaxing after |V| rounds: walk back onto the improving cycle.
  Index on_cycle = updated;
  for (Index k = 0; k < vertex_count; ++k) on_cycle = pred[static_cast<std::size_t>(on_cycle)];

  std::vector<Index> reversed{on_cycle};
  for (Index v = pred[static_cast<std::size_t>(on_cycle)]; v != on_cycle;
       v = pred[static_cast<std::size_t>(v)]) {
    reversed.push_back(v);
  }
  std::vector<Index> cycle(reversed.rbegin(), reversed.rend());
  auto first_agent = std::find_if(cycle.begin(), cycle.end(), [&](Index v) { return v < n; });
  std::rotate(cycle.begin(), first_agent, cycle.end());

  TradingCycleCertificate cert;
  cert.improvement_ratio = 1;
  for (std::size_t k = 0; k < cycle.size(); k += 2) {
    Index receiver = cycle[k];
    Index item = cycle[k + 1] - n;
    Index giver = cycle[(k + 2) % cycle.size()];
    cert.vertices.push_back(Vertex::agent(receiver));
    cert.vertices.push_back(Vertex::item(item));
    cert.improvement_ratio *= inst.value(receiver, item) / inst.value(giver, item);
  }
  if (cert.improvement_ratio <= 1) {
    throw InternalVerificationFailed("recovered exchange cycle does not improve");
  }
  return cert;
}

}  // namespace ceub
