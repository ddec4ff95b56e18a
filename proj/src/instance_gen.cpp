#include "ceub/instance_gen.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <tuple>

#include "ceub/lp.hpp"
#include "ceub/maxmin.hpp"
#include "ceub/multipliers.hpp"

namespace ceub {

std::uint64_t SplitMix64::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) { return next() % bound; }

std::vector<Rational> default_value_grid() {
  std::vector<Rational> grid;
  for (long k = 1; k <= 40; ++k) grid.emplace_back(k, 2);
  return grid;
}

void validate_config(const GenConfig& cfg) {
  if (cfg.agents <= 0 || cfg.items <= 0) {
    throw Error("generator needs at least one agent and one item");
  }
  if (cfg.value_grid.empty()) throw Error("value grid is empty");
  for (const auto& value : cfg.value_grid) {
    if (value <= 0) throw Error("value grid entries must be strictly positive");
  }
}

Instance gen_instance(const GenConfig& cfg) {
  validate_config(cfg);
  SplitMix64 rng(cfg.seed);
  Matrix values(cfg.agents, cfg.items);
  for (Index i = 0; i < cfg.agents; ++i) {
    for (Index j = 0; j < cfg.items; ++j) {
      values(i, j) = cfg.value_grid[rng.below(cfg.value_grid.size())];
    }
  }
  return validate_instance(values);
}

Allocation welfare_allocation(const Instance& inst, const Vector& weights) {
  const Index n = inst.agents();
  const Index m = inst.items();
  if (weights.size() != n) throw DimensionMismatch("one weight per agent expected");
  if ((weights.array() <= Rational(0)).any()) throw Error("welfare weights must be positive");

  LpProblem lp(n * m);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < m; ++j) lp.set_objective(i * m + j, weights(i) * inst.value(i, j));
  }
  for (Index j = 0; j < m; ++j) {
    RowVector row = RowVector::Zero(n * m);
    for (Index i = 0; i < n; ++i) row(i * m + j) = 1;
    lp.add_row(row, Relation::less_equal, 1);
  }
  const LpSolution solution = solve_lp(lp);
  if (solution.status != LpStatus::optimal) {
    throw InternalVerificationFailed("welfare LP did not reach an optimum");
  }
  Matrix x(n, m);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < m; ++j) x(i, j) = solution.x(i * m + j);
  }
  return Allocation(std::move(x));
}

namespace {

constexpr int kPerturbationRounds = 4;

// Random simple cycle through the bipartite graph given by `edge`, found by a
// DFS with shuffled neighbour order from a random agent.
std::optional<std::pair<std::vector<Index>, std::vector<Index>>> random_cycle(
    const std::vector<std::vector<char>>& edge, SplitMix64& rng) {
  const Index n = static_cast<Index>(edge.size());
  const Index m = static_cast<Index>(edge.front().size());
  const Index total = n + m;
  std::vector<Index> parent(static_cast<std::size_t>(total), -1);
  std::vector<char> state(static_cast<std::size_t>(total), 0);
  std::vector<Index> stack;
  std::optional<std::vector<Index>> found;

  auto shuffled_neighbours = [&](Index v) {
    std::vector<Index> out;
    if (v < n) {
      for (Index j = 0; j < m; ++j) {
        if (edge[static_cast<std::size_t>(v)][static_cast<std::size_t>(j)]) out.push_back(n + j);
      }
    } else {
      for (Index i = 0; i < n; ++i) {
        if (edge[static_cast<std::size_t>(i)][static_cast<std::size_t>(v - n)]) out.push_back(i);
      }
    }
    for (std::size_t k = out.size(); k > 1; --k) std::swap(out[k - 1], out[rng.below(k)]);
    return out;
  };

  std::function<void(Index)> visit = [&](Index v) {
    state[static_cast<std::size_t>(v)] = 1;
    stack.push_back(v);
    for (Index w : shuffled_neighbours(v)) {
      if (found) return;
      if (w == parent[static_cast<std::size_t>(v)]) continue;
      if (state[static_cast<std::size_t>(w)] == 1) {
        found = std::vector<Index>(std::find(stack.begin(), stack.end(), w), stack.end());
        return;
      }
      if (state[static_cast<std::size_t>(w)] == 0) {
        parent[static_cast<std::size_t>(w)] = v;
        visit(w);
      }
    }
    if (found) return;
    stack.pop_back();
    state[static_cast<std::size_t>(v)] = 2;
  };

  const Index offset = static_cast<Index>(rng.below(static_cast<std::uint64_t>(n)));
  for (Index k = 0; k < n && !found; ++k) {
    const Index start = (offset + k) % n;
    if (state[static_cast<std::size_t>(start)] == 0) visit(start);
  }
  if (!found) return std::nullopt;
  std::vector<Index> walk = *found;
  if (walk.front() >= n) std::rotate(walk.begin(), walk.begin() + 1, walk.end());
  std::vector<Index> agents;
  std::vector<Index> items;
  for (std::size_t k = 0; k < walk.size(); k += 2) {
    agents.push_back(walk[k]);
    items.push_back(walk[k + 1] - n);
  }
  return std::make_pair(agents, items);
}

Allocation perturbed_maxmin(const Instance& inst, SplitMix64& rng) {
  const Index n = inst.agents();
  const Index m = inst.items();
  const Allocation base = maxmin_lp(inst).allocation;
  const Equilibrium eq = support_pipeline(inst, base);

  // Max bang-per-buck edges; money moved along a cycle of them keeps every
  // spend and every utility fixed.
  std::vector<std::vector<char>> edge(static_cast<std::size_t>(n),
                                      std::vector<char>(static_cast<std::size_t>(m), 0));
  for (Index i = 0; i < n; ++i) {
    Rational best = 0;
    for (Index j = 0; j < m; ++j) best = std::max(best, inst.value(i, j) / eq.prices(j));
    for (Index j = 0; j < m; ++j) {
      if (inst.value(i, j) / eq.prices(j) == best) {
        edge[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
      }
    }
  }

  Matrix money(n, m);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < m; ++j) money(i, j) = base(i, j) * eq.prices(j);
  }
  static const std::array<Rational, 4> fractions{Rational(1, 3), Rational(1, 2), Rational(2, 3),
                                                 Rational(1)};
  for (int round = 0; round < kPerturbationRounds; ++round) {
    auto cycle = random_cycle(edge, rng);
    if (!cycle) break;
    const auto& [agents, items] = *cycle;
    const std::size_t k = agents.size();
    // Agent agents[l] gains delta on items[l]; agents[l + 1] loses it.
    Rational up = money(agents[1 % k], items[0]);
    Rational down = money(agents[0], items[0]);
    for (std::size_t l = 0; l < k; ++l) {
      up = std::min(up, money(agents[(l + 1) % k], items[l]));
      down = std::min(down, money(agents[l], items[l]));
    }
    const Rational& fraction = fractions[rng.below(fractions.size())];
    Rational delta;
    if (up > 0 && (down == 0 || rng.below(2) == 0)) {
      delta = up * fraction;
    } else if (down > 0) {
      delta = -down * fraction;
    } else {
      continue;
    }
    for (std::size_t l = 0; l < k; ++l) {
      money(agents[l], items[l]) += delta;
      money(agents[(l + 1) % k], items[l]) -= delta;
    }
  }

  Matrix x(n, m);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < m; ++j) x(i, j) = money(i, j) / eq.prices(j);
  }
  return Allocation(std::move(x));
}

}  // namespace

Allocation gen_pareto_allocation(const Instance& inst, std::uint64_t seed, GenMode mode) {
  SplitMix64 rng(seed);
  if (mode == GenMode::maxmin_perturbed) return perturbed_maxmin(inst, rng);
  const std::vector<Rational> grid = default_value_grid();
  Vector weights(inst.agents());
  for (Index i = 0; i < inst.agents(); ++i) weights(i) = grid[rng.below(grid.size())];
  return welfare_allocation(inst, weights);
}

std::optional<Allocation> gen_dominated_allocation(const Instance& inst, const Allocation& po,
                                                   std::uint64_t seed) {
  check_dimensions(inst, po);
  // (loser a, indifferent b, item j a gives up, item k b gives up)
  std::vector<std::array<Index, 4>> trades;
  for (Index a = 0; a < inst.agents(); ++a) {
    for (Index b = 0; b < inst.agents(); ++b) {
      if (a == b) continue;
      for (Index j = 0; j < inst.items(); ++j) {
        if (po(a, j) <= 0) continue;
        for (Index k = 0; k < inst.items(); ++k) {
          if (k == j || po(b, k) <= 0) continue;
          if (inst.value(b, j) * inst.value(a, k) < inst.value(a, j) * inst.value(b, k)) {
            trades.push_back({a, b, j, k});
          }
        }
      }
    }
  }
  if (trades.empty()) return std::nullopt;
  SplitMix64 rng(seed);
  const auto [a, b, j, k] = trades[rng.below(trades.size())];
  // b trades `give` of j for give * v(b, j) / v(b, k) of k at equal value.
  const Rational rate = inst.value(b, j) / inst.value(b, k);
  const Rational give = std::min(po(a, j), po(b, k) / rate) / 2;
  Matrix x = po.matrix();
  x(a, j) -= give;
  x(b, j) += give;
  x(b, k) -= give * rate;
  x(a, k) += give * rate;
  return Allocation(std::move(x));
}

}  // namespace ceub
