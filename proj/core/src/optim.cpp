#include "momrob/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "momrob/error.hpp"
#include "momrob/mom.hpp"

namespace momrob {

void validate(const StepSchedule& schedule) {
  if (!(schedule.eta0 >= 0.0) || !std::isfinite(schedule.eta0))
    throw ArgumentError("step schedule: eta0 must be finite and non-negative");
}

ScheduleKind parse_schedule_kind(std::string_view text) {
  if (text == "inverse-t") return ScheduleKind::InverseT;
  if (text == "constant") return ScheduleKind::Constant;
  throw ArgumentError("unknown schedule '" + std::string(text) + "' (expected inverse-t or constant)");
}

std::string to_string(ScheduleKind kind) {
  return kind == ScheduleKind::InverseT ? "inverse-t" : "constant";
}

GradientScale parse_gradient_scale(std::string_view text) {
  if (text == "sum") return GradientScale::BlockSum;
  if (text == "mean") return GradientScale::BlockMean;
  throw ArgumentError("unknown gradient scale '" + std::string(text) + "' (expected sum or mean)");
}

std::string to_string(GradientScale scale) {
  return scale == GradientScale::BlockSum ? "sum" : "mean";
}

namespace {

// Same summation order as linear_score.
double score_of(const Eigen::VectorXd& theta, std::span<const double> x) {
  const auto p = static_cast<Eigen::Index>(x.size());
  double s = theta(p);
  for (Eigen::Index j = 0; j < p; ++j) s += theta(j) * x[static_cast<std::size_t>(j)];
  return s;
}

void losses_into(const TrainingView& data, const Eigen::VectorXd& theta, LossKind loss,
                 std::vector<double>& out) {
  out.resize(data.size());
  for (std::size_t i = 0; i < data.size(); ++i)
    out[i] = loss_value(loss, score_of(theta, data.row(i)), data.label(i));
}

Eigen::VectorXd gradient_sum(const TrainingView& data, const Eigen::VectorXd& theta,
                             std::span<const std::size_t> indices, LossKind loss) {
  const auto p = static_cast<Eigen::Index>(data.dim());
  Eigen::VectorXd g = Eigen::VectorXd::Zero(p + 1);
  for (std::size_t i : indices) {
    const auto x = data.row(i);
    const double d = loss_grad_score(loss, score_of(theta, x), data.label(i));
    for (Eigen::Index j = 0; j < p; ++j) g(j) += d * x[static_cast<std::size_t>(j)];
    g(p) += d;
  }
  return g;
}

void check_model_dim(const TrainingView& data, const LinearModel& m) {
  if (m.dim() != data.dim())
    throw DimensionError("model dimension " + std::to_string(m.dim()) +
                         " does not match data dimension " + std::to_string(data.dim()));
}

void check_finite_step(const Eigen::VectorXd& g, std::size_t t, const char* who) {
  if (!g.allFinite()) {
    std::ostringstream msg;
    msg << who << ": non-finite gradient at step " << t << " (gradient = " << g.transpose() << ")";
    throw NumericError(msg.str());
  }
}

}  // namespace

std::vector<double> sample_losses(const TrainingView& data, const LinearModel& m, LossKind loss) {
  check_model_dim(data, m);
  std::vector<double> out;
  losses_into(data, m.parameters(), loss, out);
  return out;
}

Eigen::VectorXd summed_gradient(const TrainingView& data, const LinearModel& m,
                                std::span<const std::size_t> indices, LossKind loss) {
  check_model_dim(data, m);
  for (std::size_t i : indices)
    if (i >= data.size()) throw ArgumentError("summed_gradient: index out of range");
  return gradient_sum(data, m.parameters(), indices, loss);
}

LinearTrainResult mom_gd_train(const TrainingView& data, const LinearModel& init,
                               const MomGdConfig& cfg) {
  const std::size_t n = data.size();
  check_model_dim(data, init);
  validate(cfg.schedule);
  if (cfg.k == 0 || cfg.k > n)
    throw ArgumentError("mom_gd_train: K = " + std::to_string(cfg.k) + " must lie in [1, N = " +
                        std::to_string(n) + "]");
  if (!cfg.relax_block_range && (cfg.k < 3 || 2 * cfg.k > n))
    throw ArgumentError("mom_gd_train: K = " + std::to_string(cfg.k) + " outside [3, N/2]");
  if (cfg.iterations == 0) throw ArgumentError("mom_gd_train: need at least one iteration");
  if (cfg.loss == LossKind::ZeroOne)
    throw UnsupportedOperation("mom_gd_train: zero-one loss has no gradient");

  Eigen::VectorXd theta = init.parameters();
  TrainTrace trace;
  trace.n = n;
  trace.k = cfg.k;
  trace.recorded = cfg.record_selections;
  std::vector<double> losses;
  std::optional<Partition> current;

  for (std::size_t t = 0; t < cfg.iterations; ++t) {
    const RngSeed step_seed = derive_seed(cfg.seed, cfg.fixed_partition ? 0 : t);
    if (!current || !cfg.fixed_partition) {
      Rng rng(step_seed);
      current.emplace(random_equipartition(n, cfg.k, rng));
    }
    const Partition& partition = *current;
    losses_into(data, theta, cfg.loss, losses);
    const BlockMeans means = block_means(losses, partition);
    const std::size_t k_med = median_block_index(means);
    const auto& members = partition.block(k_med);

    Eigen::VectorXd g = gradient_sum(data, theta, members, cfg.loss);
    if (cfg.gradient_scale == GradientScale::BlockMean) g /= static_cast<double>(members.size());
    check_finite_step(g, t, "mom_gd_train");
    theta -= cfg.schedule.rate(t) * g;

    if (cfg.record_selections)
      trace.median_blocks.push_back({t, step_seed.value, k_med, members, means.means[k_med]});
    if (cfg.record_iterates) trace.iterates.push_back(theta);
  }

  Rng final_rng(derive_seed(cfg.seed, cfg.iterations));
  const Partition final_partition = random_equipartition(n, cfg.k, final_rng);
  losses_into(data, theta, cfg.loss, losses);
  trace.final_objective = mom_estimate(losses, final_partition);
  return {LinearModel::from_parameters(theta), std::move(trace)};
}

LinearModel erm_gd_train(const TrainingView& data, const LinearModel& init,
                         std::size_t iterations, const StepSchedule& schedule, LossKind loss,
                         std::vector<Eigen::VectorXd>* iterates) {
  check_model_dim(data, init);
  validate(schedule);
  if (iterations == 0) throw ArgumentError("erm_gd_train: need at least one iteration");
  if (loss == LossKind::ZeroOne) throw UnsupportedOperation("erm_gd_train: zero-one loss has no gradient");
  std::vector<std::size_t> all(data.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;

  Eigen::VectorXd theta = init.parameters();
  for (std::size_t t = 0; t < iterations; ++t) {
    Eigen::VectorXd g = gradient_sum(data, theta, all, loss);
    g /= static_cast<double>(all.size());
    check_finite_step(g, t, "erm_gd_train");
    theta -= schedule.rate(t) * g;
    if (iterates) iterates->push_back(theta);
  }
  return LinearModel::from_parameters(theta);
}

double mom_objective(const TrainingView& data, const LinearModel& m, const Partition& partition,
                     LossKind loss) {
  if (partition.n() != data.size()) throw ArgumentError("mom_objective: partition size mismatch");
  return mom_estimate(sample_losses(data, m, loss), partition);
}

double expected_mom_objective(const TrainingView& data, const LinearModel& m, std::size_t k,
                              LossKind loss, std::size_t n_mc, RngSeed seed) {
  if (n_mc == 0) throw ArgumentError("expected_mom_objective: n_mc must be >= 1");
  if (k == 0 || k > data.size()) throw ArgumentError("expected_mom_objective: need 1 <= K <= N");
  const std::vector<double> losses = sample_losses(data, m, loss);
  double acc = 0.0;
  for (std::size_t r = 0; r < n_mc; ++r) {
    Rng rng(derive_seed(seed, r));
    acc += mom_estimate(losses, random_equipartition(data.size(), k, rng));
  }
  return acc / static_cast<double>(n_mc);
}

GradientCheck median_block_gradient_check(const TrainingView& data, const LinearModel& m,
                                          const Partition& partition, LossKind loss, double h) {
  if (!(h > 0.0) || !std::isfinite(h))
    throw ArgumentError("median_block_gradient_check: h must be a finite positive step");
  if (loss == LossKind::ZeroOne)
    throw UnsupportedOperation("median_block_gradient_check: zero-one loss has no gradient");
  if (partition.n() != data.size()) throw ArgumentError("gradient check: partition size mismatch");
  check_model_dim(data, m);

  const Eigen::VectorXd theta = m.parameters();
  std::vector<double> losses;
  losses_into(data, theta, loss, losses);
  const BlockMeans means = block_means(losses, partition);
  const std::size_t k_med = median_block_index(means);

  std::vector<double> sorted = means.means;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t r = median_rank(sorted.size());
  double gap = std::numeric_limits<double>::infinity();
  if (r > 0) gap = std::min(gap, sorted[r] - sorted[r - 1]);
  if (r + 1 < sorted.size()) gap = std::min(gap, sorted[r + 1] - sorted[r]);

  double bound = 0.0;  // max ||(x_i, 1)||_2; loss derivatives are bounded by 1
  for (const auto& block : partition.blocks())
    for (std::size_t i : block) {
      double sq = 1.0;
      for (double v : data.row(i)) sq += v * v;
      bound = std::max(bound, std::sqrt(sq));
    }
  const double margin = 10.0 * h * bound;

  GradientCheck out;
  out.boundary_gap = gap;
  const auto& members = partition.block(k_med);
  out.analytic = gradient_sum(data, theta, members, loss) / static_cast<double>(members.size());

  bool conclusive = gap > margin;
  if (loss == LossKind::Hinge) {
    for (std::size_t i : members) {
      const double mg = data.label(i) * score_of(theta, data.row(i));
      if (std::abs(1.0 - mg) <= margin) conclusive = false;
    }
  }

  out.numeric.resize(theta.size());
  for (Eigen::Index j = 0; j < theta.size(); ++j) {
    Eigen::VectorXd plus = theta;
    Eigen::VectorXd minus = theta;
    plus(j) += h;
    minus(j) -= h;
    losses_into(data, plus, loss, losses);
    const double f_plus = mom_estimate(losses, partition);
    losses_into(data, minus, loss, losses);
    const double f_minus = mom_estimate(losses, partition);
    out.numeric(j) = (f_plus - f_minus) / (2.0 * h);
  }

  const double floor = 1e-3 * out.analytic.cwiseAbs().maxCoeff();
  double worst = 0.0;
  for (Eigen::Index j = 0; j < theta.size(); ++j) {
    const double a = out.analytic(j);
    const double nu = out.numeric(j);
    const double scale = std::max({std::abs(a), std::abs(nu), floor, 1e-300});
    worst = std::max(worst, std::abs(a - nu) / scale);
  }
  out.max_relative_deviation = worst;
  out.status = conclusive ? GradientCheckStatus::Ok : GradientCheckStatus::Inconclusive;
  return out;
}

LinearModel fit_logistic_erm(const TrainingView& data, double tol, std::size_t max_iterations) {
  const std::size_t n = data.size();
  const auto p = static_cast<Eigen::Index>(data.dim());
  Eigen::MatrixXd a(static_cast<Eigen::Index>(n), p + 1);
  Eigen::VectorXd y(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    for (Eigen::Index j = 0; j < p; ++j) a(r, j) = data.row(i)[static_cast<std::size_t>(j)];
    a(r, p) = 1.0;
    y(r) = data.label(i);
  }
  auto objective = [&](const Eigen::VectorXd& th) {
    const Eigen::VectorXd s = a * th;
    double acc = 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
      acc += loss_value(LossKind::Logistic, s(i), static_cast<int>(y(i)));
    return acc / static_cast<double>(n);
  };

  Eigen::VectorXd theta = Eigen::VectorXd::Zero(p + 1);
  double f = objective(theta);
  for (std::size_t it = 0; it < max_iterations; ++it) {
    const Eigen::VectorXd s = a * theta;
    Eigen::VectorXd g = Eigen::VectorXd::Zero(p + 1);
    Eigen::VectorXd w(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      const double d = loss_grad_score(LossKind::Logistic, s(i), static_cast<int>(y(i)));
      g += d * a.row(i).transpose();
      const double pi = 1.0 / (1.0 + std::exp(-s(i)));
      w(i) = pi * (1.0 - pi);
    }
    g /= static_cast<double>(n);
    Eigen::MatrixXd hess = a.transpose() * w.asDiagonal() * a / static_cast<double>(n);
    hess.diagonal().array() += 1e-12;
    const Eigen::VectorXd step = hess.ldlt().solve(g);
    if (!step.allFinite()) throw NumericError("fit_logistic_erm: Newton step is not finite");
    double scale = 1.0;
    Eigen::VectorXd next = theta - step;
    double f_next = objective(next);
    while (f_next > f && scale > 1e-8) {
      scale *= 0.5;
      next = theta - scale * step;
      f_next = objective(next);
    }
    theta = next;
    f = f_next;
    if ((scale * step).cwiseAbs().maxCoeff() < tol) break;
  }
  return LinearModel::from_parameters(theta);
}

}  // namespace momrob
