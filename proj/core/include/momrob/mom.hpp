#ifndef MOMROB_MOM_HPP_
#define MOMROB_MOM_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "momrob/data.hpp"

namespace momrob {

struct BlockMeans {
  std::vector<double> means;
  std::size_t block_size = 0;
};

/// Mean of values over each block, summed in ascending index order.
BlockMeans block_means(std::span<const double> values, const Partition& partition);

/// Rank of the median among K sorted block means (0-based). Odd K gives the
/// middle order statistic, even K the lower median.
constexpr std::size_t median_rank(std::size_t k) { return (k - 1) / 2; }

/// Lower median of the given means.
double median_of(std::span<const double> means);

/// Median of the block means.
double mom_estimate(std::span<const double> values, const Partition& partition);

/// Smallest block index whose mean equals the (lower) median.
std::size_t median_block_index(const BlockMeans& means);

}  // namespace momrob

#endif  // MOMROB_MOM_HPP_
