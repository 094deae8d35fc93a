#ifndef MOMROB_EXPERIMENTS_HPP_
#define MOMROB_EXPERIMENTS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "momrob/data.hpp"
#include "momrob/model.hpp"
#include "momrob/optim.hpp"
#include "momrob/rng.hpp"

namespace momrob {

using Scorer = std::function<double(std::span<const double>)>;

Scorer make_scorer(const LinearModel& m);
Scorer make_scorer(const KernelModel& m);

/// Fraction of test samples whose sign(score) (sign(0) = +1) equals the label.
double accuracy(const Scorer& f, const Dataset& test);

struct RunRecord {
  std::string method;
  double param = 0.0;        // K, n, or 0 depending on the experiment
  std::uint64_t seed = 0;    // per-run seed derived from the master seed
  double value = 0.0;        // accuracy, or |excess risk| for rate runs
  double detail = 0.0;       // signed excess risk / time ratio; experiment specific
  double wall_seconds = 0.0;
  std::string error;         // non-empty when the run failed
};

struct SummaryRow {
  std::string method;
  double param = 0.0;
  std::size_t count = 0;
  double mean = 0.0;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<double> log_n;
  std::vector<double> log_excess;
  std::vector<double> dropped_n;
};

struct ExperimentReport {
  std::string name;
  std::uint64_t master_seed = 0;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<RunRecord> records;
  std::vector<SummaryRow> summary;
  std::optional<SlopeFit> slope;
  std::vector<std::string> warnings;

  /// Values of successful records for (method, param).
  std::vector<double> values(const std::string& method, double param) const;
  const SummaryRow* find_summary(const std::string& method, double param) const;
};

/// Summary rows per (method, param) in order of first appearance; failed
/// runs are excluded. Quartiles use linear interpolation between order
/// statistics.
std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records);

double median_value(std::vector<double> values);

/// Ordinary least squares of y on x.
SlopeFit fit_line(std::span<const double> x, std::span<const double> y);

/// Per-run seed: derive_seed(master, run).
inline RngSeed run_seed(RngSeed master, std::size_t run) { return derive_seed(master, run); }

// ---------------------------------------------------------------------------

struct RobustnessConfig {
  std::size_t n_runs = 50;
  std::size_t n_inliers = 600;
  std::size_t n_outliers = 30;
  std::size_t n_test = 500;
  std::size_t k = 120;
  std::size_t iterations = 2000;
  double eta0 = 0.5;
  std::vector<std::string> methods{"mom-logistic", "mom-hinge", "erm-logistic"};
  RngSeed master_seed{2019};
};

/// Per run: fresh toy training set and clean test set; each method is
/// trained and its test accuracy recorded. MOM methods use the literal
/// block-sum step with eta0 / (t+1); the ERM baseline takes the same
/// per-sample step, i.e. full-batch descent with eta0 * N / (t+1) on the
/// mean loss, which makes it the K = 1 instance of the MOM engine.
ExperimentReport run_robustness_experiment(const RobustnessConfig& cfg);

struct KSweepConfig {
  std::vector<std::size_t> k_values{1, 10, 30, 60, 90, 120, 200};
  std::size_t n_runs = 50;
  std::size_t n_inliers = 600;
  std::size_t n_outliers = 30;
  std::size_t n_test = 500;
  std::size_t iterations = 2000;
  double eta0 = 0.5;
  bool include_erm_baseline = true;
  RngSeed master_seed{2019};
};

/// Test accuracy of MOM logistic descent per K (records: method
/// "mom-logistic", param K) and optionally the ERM baseline (param 0).
ExperimentReport run_k_sweep(const KSweepConfig& cfg);

enum class RateDataset { Moons, Gaussians };
RateDataset parse_rate_dataset(std::string_view text);
std::string to_string(RateDataset kind);

enum class RiskEvaluation { Exact, MonteCarlo };

struct RateConfig {
  RateDataset dataset = RateDataset::Gaussians;
  std::vector<std::size_t> n_values{250, 500, 1000, 2000, 4000, 8000};
  std::size_t n_runs = 20;
  std::size_t k = 3;
  std::size_t iterations = 2000;
  double eta0 = 20.0;
  GradientScale gradient_scale = GradientScale::BlockMean;
  std::size_t reference_multiplier = 10;
  RiskEvaluation risk = RiskEvaluation::Exact;
  std::size_t mc_test_size = 20000;
  double moons_noise = 0.3;
  RngSeed master_seed{2019};
};

/// Population 0-1 risk of a linear classifier on the built-in generators:
/// closed form for the Gaussians, 1-D quadrature over the moon parameter
/// (noise integrated analytically) for the moons.
double population_zero_one_risk(RateDataset dataset, const LinearModel& m,
                                double moons_noise = 0.3);

/// For each n: trains MOM logistic descent on fresh data and a reference
/// logistic ERM on reference_multiplier * n fresh samples, records
/// |R(f_hat) - R(f_ref)| (signed value in `detail`), and fits
/// log(mean |excess|) against log(n).
ExperimentReport run_rate_experiment(const RateConfig& cfg);

struct TimingConfig {
  std::vector<std::string> algorithms{"mom-logistic", "mom-hinge", "klr-mom", "fast-klr-mom"};
  std::size_t n = 4000;
  std::size_t n_test = 4000;
  std::size_t k = 20;
  std::size_t linear_iterations = 2000;
  std::size_t kernel_iterations = 50;
  double eta0 = 0.5;
  KernelSpec kernel{KernelKind::Rbf, 0.5};
  RngSeed master_seed{2019};
};

/// Wall-clock train + test time per algorithm on generate_gaussians(n), one
/// discarded warm-up run each. `detail` holds the time relative to the
/// fastest algorithm.
ExperimentReport run_timing_probe(const TimingConfig& cfg);

/// Kernel storage of the block variant: K * floor(n/K)^2 entries.
std::size_t block_kernel_entries(std::size_t n, std::size_t k);

std::string report_to_json(const ExperimentReport& report);
void write_report_json(const ExperimentReport& report, const std::filesystem::path& path);
void write_records_csv(const ExperimentReport& report, const std::filesystem::path& path);

}  // namespace momrob

#endif  // MOMROB_EXPERIMENTS_HPP_
