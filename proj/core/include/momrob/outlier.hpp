#ifndef MOMROB_OUTLIER_HPP_
#define MOMROB_OUTLIER_HPP_

#include <cstddef>
#include <filesystem>
#include <vector>

#include "momrob/data.hpp"
#include "momrob/optim.hpp"

namespace momrob {

/// Number of descent steps in which each sample sat in the median block.
struct SelectionCounts {
  std::vector<std::size_t> counts;
  std::size_t iterations = 0;
  std::size_t k = 0;
};

SelectionCounts selection_counts(const TrainTrace& trace, std::size_t n);

/// {i : counts[i] < threshold}, ascending.
std::vector<std::size_t> flag_outliers(const SelectionCounts& sc, std::size_t threshold);

struct DetectionMetrics {
  double precision = 1.0;
  double recall = 0.0;
};

/// Precision and recall against the dataset's ground-truth flags. An empty
/// flagged set has precision 1.
DetectionMetrics detection_metrics(const std::vector<std::size_t>& flagged,
                                   const Dataset& ds);

/// Competition rank (1-based, ties share the lowest rank) of each count.
std::vector<std::size_t> count_ranks(const SelectionCounts& sc);

/// index,count[,is_outlier]
void write_counts_csv(const SelectionCounts& sc, const std::filesystem::path& path,
                      const std::vector<bool>* is_outlier = nullptr);

}  // namespace momrob

#endif  // MOMROB_OUTLIER_HPP_
