#pragma once

#include <cstdint>
#include <vector>

namespace virlab {

/// Multiplicities n_i ≥ 0 for parts i = 1..max_part, with Σ i·n_i = target.
/// `multiplicity[i]` is n_i (index 0 unused).
struct WeightedPartition {
  std::vector<int> multiplicity;
  int total_parts() const;
};

/// Every multiplicity vector with Σ_{i=1}^{max_part} i·n_i = target, each exactly once.
std::vector<WeightedPartition> weighted_partitions(int target, int max_part);

/// Number of such vectors (memoized).
std::uint64_t count_weighted_partitions(int target, int max_part);

}  // namespace virlab
