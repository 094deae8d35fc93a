#include "momrob/outlier.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "momrob/error.hpp"

namespace momrob {

SelectionCounts selection_counts(const TrainTrace& trace, std::size_t n) {
  if (!trace.recorded)
    throw ArgumentError("selection_counts: trace was trained without selection recording");
  if (trace.n != 0 && trace.n != n)
    throw DimensionError("selection_counts: trace covers N = " + std::to_string(trace.n) +
                         ", got " + std::to_string(n));
  SelectionCounts sc;
  sc.counts.assign(n, 0);
  sc.iterations = trace.median_blocks.size();
  sc.k = trace.k;
  for (const auto& rec : trace.median_blocks)
    for (std::size_t i : rec.members) {
      if (i >= n) throw ArgumentError("selection_counts: member index out of range");
      ++sc.counts[i];
    }
  return sc;
}

std::vector<std::size_t> flag_outliers(const SelectionCounts& sc, std::size_t threshold) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < sc.counts.size(); ++i)
    if (sc.counts[i] < threshold) out.push_back(i);
  return out;
}

DetectionMetrics detection_metrics(const std::vector<std::size_t>& flagged, const Dataset& ds) {
  if (!ds.has_outlier_flags())
    throw ArgumentError("detection_metrics: dataset carries no ground-truth outlier flags");
  const auto& truth = ds.outlier_flags();
  std::size_t hits = 0;
  for (std::size_t i : flagged) {
    if (i >= truth.size()) throw ArgumentError("detection_metrics: flagged index out of range");
    if (truth[i]) ++hits;
  }
  const auto planted = static_cast<std::size_t>(std::count(truth.begin(), truth.end(), true));
  DetectionMetrics m;
  m.precision = flagged.empty() ? 1.0 : static_cast<double>(hits) / static_cast<double>(flagged.size());
  m.recall = planted == 0 ? 1.0 : static_cast<double>(hits) / static_cast<double>(planted);
  return m;
}

std::vector<std::size_t> count_ranks(const SelectionCounts& sc) {
  const std::size_t n = sc.counts.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sc.counts[a] < sc.counts[b]; });
  std::vector<std::size_t> rank(n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    const std::size_t i = order[pos];
    rank[i] = (pos > 0 && sc.counts[order[pos - 1]] == sc.counts[i]) ? rank[order[pos - 1]] : pos + 1;
  }
  return rank;
}

void write_counts_csv(const SelectionCounts& sc, const std::filesystem::path& path,
                      const std::vector<bool>* is_outlier) {
  if (is_outlier && is_outlier->size() != sc.counts.size())
    throw DimensionError("write_counts_csv: flag vector length mismatch");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << "index,count" << (is_outlier ? ",is_outlier" : "") << '\n';
  for (std::size_t i = 0; i < sc.counts.size(); ++i) {
    out << i << ',' << sc.counts[i];
    if (is_outlier) out << ',' << ((*is_outlier)[i] ? 1 : 0);
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace momrob
