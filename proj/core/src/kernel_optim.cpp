#include <cmath>
#include <string>

#include "momrob/error.hpp"
#include "momrob/mom.hpp"
#include "momrob/optim.hpp"

namespace momrob {
namespace {

double sigmoid(double s) {
  return s >= 0.0 ? 1.0 / (1.0 + std::exp(-s)) : std::exp(s) / (1.0 + std::exp(s));
}

void validate_klr(const TrainingView& data, const FastKlrConfig& cfg, const char* who) {
  const std::size_t n = data.size();
  validate(cfg.schedule);
  validate(cfg.kernel);
  if (cfg.schedule.eta0 > 1.0)
    throw ArgumentError(std::string(who) + ": step sizes must lie in [0, 1]");
  if (!(cfg.beta > 0.0) || !std::isfinite(cfg.beta))
    throw ArgumentError(std::string(who) + ": beta must be positive");
  if (cfg.iterations == 0) throw ArgumentError(std::string(who) + ": need at least one iteration");
  if (cfg.k == 0 || cfg.k > n)
    throw ArgumentError(std::string(who) + ": K = " + std::to_string(cfg.k) + " must lie in [1, N]");
  if (!cfg.relax_block_range && (cfg.k < 3 || 2 * cfg.k > n))
    throw ArgumentError(std::string(who) + ": K = " + std::to_string(cfg.k) + " outside [3, N/2]");
}

double mean_log_loss(const Eigen::VectorXd& scores, const std::vector<std::size_t>& members,
                     const TrainingView& data) {
  double acc = 0.0;
  for (std::size_t r = 0; r < members.size(); ++r)
    acc += loss_value(LossKind::Logistic, scores(static_cast<Eigen::Index>(r)), data.label(members[r]));
  return acc / static_cast<double>(members.size());
}

// One IRLS step of penalised logistic regression on a block. Scores are
// s = offset + X a; returns the weighted least-squares solution a for the
// working response. Falls back to a minimum-norm solve of the penalised
// system when the normal matrix is not numerically positive definite.
Eigen::VectorXd irls_solve(const Eigen::MatrixXd& x, const Eigen::VectorXd& scores,
                           const Eigen::VectorXd& offset, const std::vector<std::size_t>& members,
                           const TrainingView& data, double beta, std::size_t t) {
  const auto m = x.rows();
  Eigen::VectorXd w(m);
  Eigen::VectorXd target(m);
  for (Eigen::Index r = 0; r < m; ++r) {
    const double y01 = data.label(members[static_cast<std::size_t>(r)]) > 0 ? 1.0 : 0.0;
    const double pi = sigmoid(scores(r));
    w(r) = std::max(pi * (1.0 - pi), kIrlsWeightFloor);
    target(r) = scores(r) + (y01 - pi) / w(r) - offset(r);
  }
  const Eigen::MatrixXd xtw = x.transpose() * w.asDiagonal();
  const Eigen::MatrixXd normal = xtw * x;
  const Eigen::VectorXd rhs = xtw * target;

  Eigen::LLT<Eigen::MatrixXd> llt(normal);
  if (llt.info() == Eigen::Success) {
    Eigen::VectorXd a = llt.solve(rhs);
    const double resid = (normal * a - rhs).norm();
    if (a.allFinite() && resid <= 1e-8 * std::max(rhs.norm(), 1.0)) return a;
  }
  const Eigen::MatrixXd penalised = normal + beta * x;
  Eigen::VectorXd a = Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(penalised).solve(rhs);
  if (!a.allFinite())
    throw NumericError("IRLS step produced non-finite coefficients at step " + std::to_string(t));
  return a;
}

Eigen::VectorXd gather(const Eigen::VectorXd& v, const std::vector<std::size_t>& idx) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t r = 0; r < idx.size(); ++r) out(static_cast<Eigen::Index>(r)) = v(static_cast<Eigen::Index>(idx[r]));
  return out;
}

}  // namespace

KernelTrainResult fast_klr_mom_train(const TrainingView& data, const FastKlrConfig& cfg,
                                     KernelProbe* probe) {
  validate_klr(data, cfg, "fast_klr_mom_train");
  const std::size_t n = data.size();
  const std::size_t k = cfg.k;
  Rng rng(cfg.seed);
  const Partition partition = random_equipartition(n, k, rng);
  std::vector<Eigen::MatrixXd> kernels = block_kernel_matrices(data, partition, cfg.kernel, probe);
  const std::size_t m = partition.block_size();

  std::vector<Eigen::VectorXd> alpha(k, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m)));
  std::vector<Eigen::VectorXd> scores(k, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m)));
  BlockMeans objective{std::vector<double>(k), m};

  auto evaluate = [&] {
    double penalty = 0.0;
    for (std::size_t b = 0; b < k; ++b) {
      scores[b] = kernels[b] * alpha[b];
      penalty += alpha[b].dot(scores[b]);
    }
    penalty *= cfg.beta;
    for (std::size_t b = 0; b < k; ++b)
      objective.means[b] = mean_log_loss(scores[b], partition.block(b), data) + penalty;
    return median_block_index(objective);
  };

  TrainTrace trace;
  trace.n = n;
  trace.k = k;
  trace.recorded = cfg.record_selections;
  const Eigen::VectorXd no_offset = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));

  for (std::size_t t = 0; t < cfg.iterations; ++t) {
    const std::size_t k_med = evaluate();
    const double eta = cfg.schedule.rate(t);
    const Eigen::VectorXd step =
        irls_solve(kernels[k_med], scores[k_med], no_offset, partition.block(k_med), data, cfg.beta, t);
    for (std::size_t b = 0; b < k; ++b) alpha[b] *= (1.0 - eta);
    alpha[k_med] += eta * step;
    if (cfg.record_selections)
      trace.median_blocks.push_back({t, cfg.seed.value, k_med, partition.block(k_med), objective.means[k_med]});
  }

  const std::size_t final_block = evaluate();
  trace.final_objective = objective.means[final_block];

  KernelModel model;
  model.alpha = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t b = 0; b < k; ++b) {
    const auto& members = partition.block(b);
    for (std::size_t r = 0; r < m; ++r)
      model.alpha(static_cast<Eigen::Index>(members[r])) = alpha[b](static_cast<Eigen::Index>(r));
  }
  model.support = data.features();
  model.kernel = cfg.kernel;
  model.blocks = partition.blocks();
  model.active_block = final_block;
  model.block_kernels = std::move(kernels);
  return {std::move(model), std::move(trace)};
}

KernelTrainResult klr_mom_train(const TrainingView& data, const FastKlrConfig& cfg,
                                KernelProbe* probe) {
  validate_klr(data, cfg, "klr_mom_train");
  const std::size_t n = data.size();
  const auto ni = static_cast<Eigen::Index>(n);

  Eigen::MatrixXd gram(ni, ni);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = kernel_eval(cfg.kernel, data.row(i), data.row(j));
      gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      gram(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
      if (probe) probe->record(i, j);
    }

  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(ni);
  TrainTrace trace;
  trace.n = n;
  trace.k = cfg.k;
  trace.recorded = cfg.record_selections;
  std::vector<double> losses(n);

  auto select = [&](const Partition& partition, const Eigen::VectorXd& scores, BlockMeans& out) {
    for (std::size_t i = 0; i < n; ++i)
      losses[i] = loss_value(LossKind::Logistic, scores(static_cast<Eigen::Index>(i)), data.label(i));
    out = block_means(losses, partition);
    const double penalty = cfg.beta * alpha.dot(scores);
    for (double& v : out.means) v += penalty;
    return median_block_index(out);
  };

  std::vector<std::vector<std::size_t>> last_blocks;
  for (std::size_t t = 0; t < cfg.iterations; ++t) {
    const RngSeed step_seed = derive_seed(cfg.seed, t);
    Rng rng(step_seed);
    const Partition partition = random_equipartition(n, cfg.k, rng);
    const Eigen::VectorXd scores = gram.selfadjointView<Eigen::Lower>() * alpha;
    BlockMeans means;
    const std::size_t k_med = select(partition, scores, means);
    const auto& members = partition.block(k_med);
    const auto m = static_cast<Eigen::Index>(members.size());

    Eigen::MatrixXd x(m, m);
    for (Eigen::Index r = 0; r < m; ++r)
      for (Eigen::Index c = 0; c < m; ++c)
        x(r, c) = gram(static_cast<Eigen::Index>(members[static_cast<std::size_t>(r)]),
                       static_cast<Eigen::Index>(members[static_cast<std::size_t>(c)]));
    const Eigen::VectorXd s_block = gather(scores, members);
    const Eigen::VectorXd offset = s_block - x * gather(alpha, members);
    const Eigen::VectorXd step = irls_solve(x, s_block, offset, members, data, cfg.beta, t);

    const double eta = cfg.schedule.rate(t);
    for (std::size_t r = 0; r < members.size(); ++r) {
      double& a = alpha(static_cast<Eigen::Index>(members[r]));
      a = (1.0 - eta) * a + eta * step(static_cast<Eigen::Index>(r));
    }
    if (cfg.record_selections)
      trace.median_blocks.push_back({t, step_seed.value, k_med, members, means.means[k_med]});
    if (t + 1 == cfg.iterations) last_blocks = partition.blocks();
  }

  {
    Rng rng(derive_seed(cfg.seed, cfg.iterations));
    const Partition partition = random_equipartition(n, cfg.k, rng);
    BlockMeans means;
    const std::size_t k_med = select(partition, gram.selfadjointView<Eigen::Lower>() * alpha, means);
    trace.final_objective = means.means[k_med];
  }

  KernelModel model;
  model.alpha = std::move(alpha);
  model.support = data.features();
  model.kernel = cfg.kernel;
  model.blocks = std::move(last_blocks);
  return {std::move(model), std::move(trace)};
}

double block_training_log_loss(const KernelModel& m, const TrainingView& data) {
  if (m.blocks.empty()) throw ArgumentError("block_training_log_loss: model has no blocks");
  if (static_cast<std::size_t>(m.alpha.size()) != data.size())
    throw DimensionError("block_training_log_loss: model and data sizes differ");
  double acc = 0.0;
  std::size_t count = 0;
  for (std::size_t b = 0; b < m.blocks.size(); ++b)
    for (std::size_t i : m.blocks[b]) {
      acc += loss_value(LossKind::Logistic, kernel_score(m, b, i), data.label(i));
      ++count;
    }
  return acc / static_cast<double>(count);
}

}  // namespace momrob
