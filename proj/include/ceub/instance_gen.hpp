#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ceub/market.hpp"

namespace ceub {

/// SplitMix64. The stream is fully specified so other implementations can
/// reproduce it bit for bit:
///   state += 0x9e3779b97f4a7c15
///   z = state
///   z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
///   z = (z ^ (z >> 27)) * 0x94d049bb133111eb
///   return z ^ (z >> 31)
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// next() % bound; bound must be positive.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

/// k / 2 for k = 1..40, i.e. 1/2, 1, 3/2, ..., 20.
std::vector<Rational> default_value_grid();

struct GenConfig {
  std::uint64_t seed = 0;
  Index agents = 1;
  Index items = 1;
  std::vector<Rational> value_grid = default_value_grid();
};

/// Throws Error on a nonpositive size or an empty/nonpositive grid.
void validate_config(const GenConfig& cfg);

/// Row-major draws from the value grid.
Instance gen_instance(const GenConfig& cfg);

enum class GenMode {
  /// Vertex of max sum_i w_i u_i for random positive weights.
  welfare,
  /// Max-min allocation moved along random utility-preserving cycles of the
  /// supporting equilibrium's max bang-per-buck graph.
  maxmin_perturbed,
};

/// Weighted-welfare maximiser for the given strictly positive weights.
Allocation welfare_allocation(const Instance& inst, const Vector& weights);

/// A Pareto-optimal, fully allocated allocation of `inst`.
Allocation gen_pareto_allocation(const Instance& inst, std::uint64_t seed,
                                 GenMode mode = GenMode::welfare);

/// Applies a bilateral trade that leaves one agent indifferent and the other
/// strictly worse, so reversing it is an improvement. Nothing is returned
/// when no pair of agents holds distinct items at a strict exchange rate.
std::optional<Allocation> gen_dominated_allocation(const Instance& inst, const Allocation& po,
                                                   std::uint64_t seed);

}  // namespace ceub
