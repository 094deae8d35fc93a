#include "momrob/mom.hpp"

#include <algorithm>

#include "momrob/error.hpp"

namespace momrob {

BlockMeans block_means(std::span<const double> values, const Partition& partition) {
  BlockMeans out;
  out.block_size = partition.block_size();
  out.means.reserve(partition.k());
  const double m = static_cast<double>(partition.block_size());
  for (const auto& block : partition.blocks()) {
    double sum = 0.0;
    for (std::size_t i : block) {
      if (i >= values.size()) throw ArgumentError("block_means: index out of range");
      sum += values[i];
    }
    out.means.push_back(sum / m);
  }
  return out;
}

double median_of(std::span<const double> means) {
  if (means.empty()) throw ArgumentError("median of an empty set");
  std::vector<double> scratch(means.begin(), means.end());
  auto nth = scratch.begin() + static_cast<std::ptrdiff_t>(median_rank(scratch.size()));
  std::nth_element(scratch.begin(), nth, scratch.end());
  return *nth;
}

double mom_estimate(std::span<const double> values, const Partition& partition) {
  return median_of(block_means(values, partition).means);
}

std::size_t median_block_index(const BlockMeans& means) {
  const double med = median_of(means.means);
  const auto it = std::find(means.means.begin(), means.means.end(), med);
  return static_cast<std::size_t>(it - means.means.begin());
}

}  // namespace momrob
