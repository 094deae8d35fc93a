#ifndef MOMROB_DATA_HPP_
#define MOMROB_DATA_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "momrob/rng.hpp"

namespace momrob {

using FeatureMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Sample {
  std::vector<double> x;
  int y = 1;
  std::optional<bool> is_outlier;
};

/// Immutable labelled dataset: N x p features, labels in {-1, +1}, and
/// optional ground-truth outlier flags used for evaluation only.
class Dataset {
 public:
  Dataset(FeatureMatrix features, std::vector<int> labels,
          std::optional<std::vector<bool>> is_outlier = std::nullopt);
  static Dataset from_samples(const std::vector<Sample>& samples);

  std::size_t size() const { return labels_.size(); }
  std::size_t dim() const { return static_cast<std::size_t>(features_.cols()); }

  std::span<const double> row(std::size_t i) const {
    return {features_.data() + i * dim(), dim()};
  }
  int label(std::size_t i) const { return labels_[i]; }
  const FeatureMatrix& features() const { return features_; }
  const std::vector<int>& labels() const { return labels_; }

  bool has_outlier_flags() const { return is_outlier_.has_value(); }
  const std::vector<bool>& outlier_flags() const;
  Sample sample(std::size_t i) const;

 private:
  FeatureMatrix features_;
  std::vector<int> labels_;
  std::optional<std::vector<bool>> is_outlier_;
};

/// The part of a Dataset that training code may see. Outlier flags are not
/// reachable from here.
class TrainingView {
 public:
  TrainingView(const Dataset& ds)  // NOLINT: implicit by design of the API
      : features_(&ds.features()), labels_(&ds.labels()) {}

  std::size_t size() const { return labels_->size(); }
  std::size_t dim() const { return static_cast<std::size_t>(features_->cols()); }
  std::span<const double> row(std::size_t i) const {
    return {features_->data() + i * dim(), dim()};
  }
  int label(std::size_t i) const { return (*labels_)[i]; }
  const FeatureMatrix& features() const { return *features_; }

 private:
  const FeatureMatrix* features_;
  const std::vector<int>* labels_;
};

/// K disjoint blocks of equal size floor(N/K). Indices inside a block are
/// kept in ascending order so block sums reduce in a fixed order.
class Partition {
 public:
  Partition(std::size_t n, std::vector<std::vector<std::size_t>> blocks);

  std::size_t n() const { return n_; }
  std::size_t k() const { return blocks_.size(); }
  std::size_t block_size() const { return block_size_; }
  const std::vector<std::size_t>& block(std::size_t k) const { return blocks_[k]; }
  const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }
  /// Block owning index i, or k() for indices dropped by the remainder rule.
  std::size_t block_of(std::size_t i) const { return owner_[i]; }

 private:
  std::size_t n_;
  std::size_t block_size_;
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<std::size_t> owner_;
};

/// Draws a uniform permutation and cuts its first K*floor(N/K) entries into K
/// consecutive blocks; the trailing N mod K entries are dropped for this draw.
Partition random_equipartition(std::size_t n, std::size_t k, Rng& rng);

// Toy setup: +1 ~ N((-1,-1), 1.4 I), -1 ~ N((1,1), 1.4 I) split evenly,
// outliers +1 ~ N((24,8), 0.1 I). Order shuffled.
Dataset generate_toy(std::size_t n_inliers, std::size_t n_outliers, RngSeed seed);

// Two interlaced half circles of radius 1 (the usual "moons" construction):
// label +1 on (cos t, sin t), label -1 on (1 - cos t, 0.5 - sin t), with t on
// an even grid over [0, pi] per moon, plus isotropic N(0, noise_sd^2) noise.
Dataset generate_moons(std::size_t n, double noise_sd, RngSeed seed);

// +1 ~ N((-1,-1), 1.4^2 I), -1 ~ N((1,1), 1.4^2 I), balanced.
Dataset generate_gaussians(std::size_t n, RngSeed seed);

using ColumnRef = std::variant<std::string, std::size_t>;

/// Reads comma-separated samples. The first row is treated as a header when
/// any of its fields is non-numeric. A column named "is_outlier" in the
/// header is read as ground-truth flags rather than a feature. Labels may be
/// encoded as {-1, 1} or {0, 1} (0 maps to -1).
Dataset load_csv(const std::filesystem::path& path, const ColumnRef& label_column);

/// Writes x0..x{p-1},y and, when flags exist, an is_outlier column.
void write_csv(const Dataset& ds, const std::filesystem::path& path);

}  // namespace momrob

#endif  // MOMROB_DATA_HPP_
