#include "virlab/partitions.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <utility>

#include "virlab/errors.hpp"

namespace virlab {

int WeightedPartition::total_parts() const {
  return std::accumulate(multiplicity.begin(), multiplicity.end(), 0);
}

namespace {

void descend(int remaining, int part, std::vector<int>& mult, std::vector<WeightedPartition>& out) {
  if (remaining == 0) {
    out.push_back(WeightedPartition{mult});
    return;
  }
  if (part == 0) return;
  for (int n = remaining / part; n >= 0; --n) {
    mult[static_cast<std::size_t>(part)] = n;
    descend(remaining - n * part, part - 1, mult, out);
  }
  mult[static_cast<std::size_t>(part)] = 0;
}

}  // namespace

std::vector<WeightedPartition> weighted_partitions(int target, int max_part) {
  if (target < 0 || max_part < 0) throw DomainError("negative partition target");
  std::vector<int> mult(static_cast<std::size_t>(max_part) + 1, 0);
  std::vector<WeightedPartition> out;
  descend(target, std::min(max_part, target), mult, out);
  for (auto& p : out) p.multiplicity.resize(static_cast<std::size_t>(max_part) + 1, 0);
  return out;
}

std::uint64_t count_weighted_partitions(int target, int max_part) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::uint64_t> memo;
  if (target == 0) return 1;
  if (target < 0 || max_part <= 0) return 0;
  {
    std::lock_guard lock(mu);
    auto it = memo.find({target, max_part});
    if (it != memo.end()) return it->second;
  }
  const std::uint64_t n = count_weighted_partitions(target, max_part - 1) +
                          count_weighted_partitions(target - max_part, max_part);
  std::lock_guard lock(mu);
  memo[{target, max_part}] = n;
  return n;
}

}  // namespace virlab
