#ifndef MOMROB_MODEL_HPP_
#define MOMROB_MODEL_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "momrob/data.hpp"

namespace momrob {

/// Score x -> <u, x> + b. The intercept is an unpenalized extra coordinate.
struct LinearModel {
  Eigen::VectorXd u;
  double b = 0.0;

  static LinearModel zeros(std::size_t p) { return {Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p)), 0.0}; }
  std::size_t dim() const { return static_cast<std::size_t>(u.size()); }
  /// (u, b) stacked as a p+1 vector.
  Eigen::VectorXd parameters() const;
  static LinearModel from_parameters(const Eigen::VectorXd& theta);
};

double linear_score(const LinearModel& m, std::span<const double> x);

enum class KernelKind { Linear, Rbf };

struct KernelSpec {
  KernelKind kind = KernelKind::Rbf;
  double gamma = 1.0;  // RBF bandwidth, ignored by Linear
};

void validate(const KernelSpec& spec);
KernelKind parse_kernel_kind(std::string_view text);
std::string to_string(KernelKind kind);

double kernel_eval(const KernelSpec& spec, std::span<const double> x1,
                   std::span<const double> x2);

/// Median heuristic for the RBF bandwidth: gamma = 1 / median ||xi - xj||^2
/// over at most max_pairs sampled pairs.
double median_heuristic_gamma(const TrainingView& data, RngSeed seed,
                              std::size_t max_pairs = 2000);

/// Counts kernel evaluations between training indices and how many of them
/// paired indices from two different blocks of a reference partition.
class KernelProbe {
 public:
  explicit KernelProbe(const Partition& partition) : partition_(&partition) {}

  void record(std::size_t i, std::size_t j) {
    ++total_;
    if (partition_->block_of(i) != partition_->block_of(j)) ++cross_block_;
  }
  std::uint64_t total() const { return total_; }
  std::uint64_t cross_block() const { return cross_block_; }

 private:
  const Partition* partition_;
  std::uint64_t total_ = 0;
  std::uint64_t cross_block_ = 0;
};

/// N^k = (kappa(X_i, X_j))_{i,j in B_k} for every block; rows and columns
/// follow the block's ascending index order. Never forms the N x N Gram.
std::vector<Eigen::MatrixXd> block_kernel_matrices(const TrainingView& data,
                                                   const Partition& partition,
                                                   const KernelSpec& spec,
                                                   KernelProbe* probe = nullptr);

/// Kernel expansion over training points. `alpha` has one coefficient per
/// training sample (dropped indices stay 0). When `active_block` is set the
/// predictor only expands over that block, otherwise over all support points.
struct KernelModel {
  Eigen::VectorXd alpha;
  FeatureMatrix support;
  KernelSpec kernel;
  std::vector<std::vector<std::size_t>> blocks;
  std::optional<std::size_t> active_block;
  std::vector<Eigen::MatrixXd> block_kernels;  // may be empty after loading

  std::size_t dim() const { return static_cast<std::size_t>(support.cols()); }
};

/// Row `x_index` of N^block times alpha^block. Uses the stored block kernel
/// matrices when present.
double kernel_score(const KernelModel& m, std::size_t block, std::size_t x_index);

/// Score of a new point under the model's predictor.
double kernel_predict_score(const KernelModel& m, std::span<const double> x);

}  // namespace momrob

#endif  // MOMROB_MODEL_HPP_
