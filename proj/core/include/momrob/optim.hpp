#ifndef MOMROB_OPTIM_HPP_
#define MOMROB_OPTIM_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "momrob/data.hpp"
#include "momrob/losses.hpp"
#include "momrob/model.hpp"
#include "momrob/rng.hpp"

namespace momrob {

enum class ScheduleKind { InverseT, Constant };

/// InverseT: eta_t = eta0 / (t + 1), which has a divergent sum and a
/// summable square. Constant violates the latter and is meant for baselines
/// and diagnostics.
struct StepSchedule {
  ScheduleKind kind = ScheduleKind::InverseT;
  double eta0 = 0.5;

  double rate(std::size_t t) const {
    return kind == ScheduleKind::InverseT ? eta0 / static_cast<double>(t + 1) : eta0;
  }
};

void validate(const StepSchedule& schedule);
ScheduleKind parse_schedule_kind(std::string_view text);
std::string to_string(ScheduleKind kind);

/// How the median block's per-sample gradients are combined.
/// BlockSum is the literal update u <- u - eta * sum_i grad_i.
/// BlockMean divides by the block size, which is the same update with eta
/// rescaled by K/N'. With K = 1, BlockMean is exactly full-batch ERM.
enum class GradientScale { BlockSum, BlockMean };

GradientScale parse_gradient_scale(std::string_view text);
std::string to_string(GradientScale scale);

struct MomGdConfig {
  std::size_t k = 120;
  std::size_t iterations = 2000;
  StepSchedule schedule{};
  LossKind loss = LossKind::Logistic;
  RngSeed seed{};
  GradientScale gradient_scale = GradientScale::BlockSum;
  bool record_selections = false;
  bool record_iterates = false;
  // Admit K outside [3, N/2] (K = 1 baseline runs, K-sweeps). K must still
  // lie in [1, N].
  bool relax_block_range = false;
  // Diagnostic: draw one partition (seeded by derive_seed(seed, 0)) and keep
  // it for every step instead of repartitioning.
  bool fixed_partition = false;
};

struct MedianBlockRecord {
  std::size_t t = 0;
  std::uint64_t partition_seed = 0;
  std::size_t k_med = 0;
  std::vector<std::size_t> members;
  double objective = 0.0;  // MOM value at the iterate before the step
};

struct TrainTrace {
  std::vector<Eigen::VectorXd> iterates;  // parameters after each step
  std::vector<MedianBlockRecord> median_blocks;
  double final_objective = 0.0;
  std::size_t n = 0;  // training set size
  std::size_t k = 0;
  bool recorded = false;
};

struct LinearTrainResult {
  LinearModel model;
  TrainTrace trace;
};

/// MOM gradient descent: each step draws a fresh uniform equipartition
/// (seeded by derive_seed(cfg.seed, t)), locates the median block of the
/// per-sample losses and steps along the gradient of that block only.
LinearTrainResult mom_gd_train(const TrainingView& data, const LinearModel& init,
                               const MomGdConfig& cfg);

/// Full-batch gradient descent on the empirical mean loss. When `iterates`
/// is non-null the parameters after every step are appended to it.
LinearModel erm_gd_train(const TrainingView& data, const LinearModel& init,
                         std::size_t iterations, const StepSchedule& schedule,
                         LossKind loss,
                         std::vector<Eigen::VectorXd>* iterates = nullptr);

/// Per-sample losses of a linear model.
std::vector<double> sample_losses(const TrainingView& data, const LinearModel& m,
                                  LossKind loss);

/// Sum over `indices` of the per-sample gradient with respect to (u, b).
Eigen::VectorXd summed_gradient(const TrainingView& data, const LinearModel& m,
                                std::span<const std::size_t> indices, LossKind loss);

/// MOM estimate of the risk of m for a fixed partition.
double mom_objective(const TrainingView& data, const LinearModel& m,
                     const Partition& partition, LossKind loss);

/// Monte-Carlo average of mom_objective over n_mc independent uniform
/// equipartitions.
double expected_mom_objective(const TrainingView& data, const LinearModel& m,
                              std::size_t k, LossKind loss, std::size_t n_mc,
                              RngSeed seed);

inline constexpr std::size_t kExpectedObjectiveSamples = 300;

enum class GradientCheckStatus { Ok, Inconclusive };

struct GradientCheck {
  GradientCheckStatus status = GradientCheckStatus::Inconclusive;
  double max_relative_deviation = 0.0;
  Eigen::VectorXd analytic;
  Eigen::VectorXd numeric;
  double boundary_gap = 0.0;  // distance from the median to its neighbours
};

/// Compares the median-block gradient (mean gradient over the median block)
/// with central differences of mom_objective at the same partition.
/// Inconclusive when a step of size h could move the iterate across a cell
/// boundary: a neighbouring block mean within 10*h*G of the median, where G
/// bounds the per-sample gradient norm; for hinge loss also when a median
/// block margin lies within 10*h*G of the kink.
/// The deviation of coordinate j is |a_j - n_j| / max(|a_j|, |n_j|, 1e-3 * max_j |a_j|).
GradientCheck median_block_gradient_check(const TrainingView& data,
                                          const LinearModel& m,
                                          const Partition& partition,
                                          LossKind loss, double h);

// ---------------------------------------------------------------------------
// Kernel logistic regression

struct FastKlrConfig {
  std::size_t k = 20;
  std::size_t iterations = 100;
  StepSchedule schedule{ScheduleKind::InverseT, 1.0};
  double beta = 1e-3;
  KernelSpec kernel{};
  RngSeed seed{};
  bool record_selections = false;
  bool relax_block_range = false;
};

inline constexpr double kIrlsWeightFloor = 1e-10;

struct KernelTrainResult {
  KernelModel model;
  TrainTrace trace;
};

/// Fast KLR MOM. One partition fixed at the start, K block kernel matrices
/// built once; per step the median block (on mean log-loss of in-block
/// scores plus the shared penalty) takes a damped IRLS step and every other
/// block shrinks by (1 - eta_t). The returned predictor expands over the
/// final median block.
KernelTrainResult fast_klr_mom_train(const TrainingView& data, const FastKlrConfig& cfg,
                                     KernelProbe* probe = nullptr);

/// KLR MOM on the full Gram matrix: fresh random partition per step, scores
/// from the full kernel expansion, damped IRLS step on the median block
/// coordinates (all other coefficients held fixed). Reference point for the
/// block variant's cost.
KernelTrainResult klr_mom_train(const TrainingView& data, const FastKlrConfig& cfg,
                                KernelProbe* probe = nullptr);

/// Exact logistic ERM with intercept via damped Newton iterations.
LinearModel fit_logistic_erm(const TrainingView& data, double tol = 1e-10,
                             std::size_t max_iterations = 100);

/// Mean logistic loss of in-block scores over all partition blocks.
double block_training_log_loss(const KernelModel& m, const TrainingView& data);

}  // namespace momrob

#endif  // MOMROB_OPTIM_HPP_
