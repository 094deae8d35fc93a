#include "momrob/model.hpp"

#include <algorithm>
#include <cmath>

#include "momrob/error.hpp"

namespace momrob {

Eigen::VectorXd LinearModel::parameters() const {
  Eigen::VectorXd theta(u.size() + 1);
  theta.head(u.size()) = u;
  theta(u.size()) = b;
  return theta;
}

LinearModel LinearModel::from_parameters(const Eigen::VectorXd& theta) {
  if (theta.size() < 1) throw DimensionError("parameter vector is empty");
  return {theta.head(theta.size() - 1), theta(theta.size() - 1)};
}

double linear_score(const LinearModel& m, std::span<const double> x) {
  if (x.size() != m.dim())
    throw DimensionError("linear_score: model has dimension " + std::to_string(m.dim()) +
                         ", sample has " + std::to_string(x.size()));
  double s = m.b;
  for (std::size_t j = 0; j < x.size(); ++j) s += m.u(static_cast<Eigen::Index>(j)) * x[j];
  return s;
}

void validate(const KernelSpec& spec) {
  if (spec.kind == KernelKind::Rbf && !(spec.gamma > 0.0 && std::isfinite(spec.gamma)))
    throw ArgumentError("RBF kernel needs a finite gamma > 0");
}

KernelKind parse_kernel_kind(std::string_view text) {
  if (text == "linear") return KernelKind::Linear;
  if (text == "rbf") return KernelKind::Rbf;
  throw ArgumentError("unknown kernel '" + std::string(text) + "' (expected linear or rbf)");
}

std::string to_string(KernelKind kind) { return kind == KernelKind::Linear ? "linear" : "rbf"; }

double kernel_eval(const KernelSpec& spec, std::span<const double> x1,
                   std::span<const double> x2) {
  if (x1.size() != x2.size()) throw DimensionError("kernel_eval: dimension mismatch");
  double acc = 0.0;
  if (spec.kind == KernelKind::Linear) {
    for (std::size_t j = 0; j < x1.size(); ++j) acc += x1[j] * x2[j];
    return acc;
  }
  for (std::size_t j = 0; j < x1.size(); ++j) {
    const double d = x1[j] - x2[j];
    acc += d * d;
  }
  return std::exp(-spec.gamma * acc);
}

double median_heuristic_gamma(const TrainingView& data, RngSeed seed, std::size_t max_pairs) {
  const std::size_t n = data.size();
  if (n < 2) throw ArgumentError("median heuristic needs at least two samples");
  Rng rng(seed);
  std::vector<double> d2;
  const std::size_t pairs = std::min(max_pairs, n * (n - 1) / 2);
  d2.reserve(pairs);
  while (d2.size() < pairs) {
    const std::size_t i = rng.uniform_index(n);
    const std::size_t j = rng.uniform_index(n);
    if (i == j) continue;
    auto a = data.row(i);
    auto b = data.row(j);
    double acc = 0.0;
    for (std::size_t c = 0; c < a.size(); ++c) acc += (a[c] - b[c]) * (a[c] - b[c]);
    d2.push_back(acc);
  }
  auto mid = d2.begin() + static_cast<std::ptrdiff_t>(d2.size() / 2);
  std::nth_element(d2.begin(), mid, d2.end());
  if (*mid <= 0.0) throw NumericError("median heuristic: median squared distance is zero");
  return 1.0 / *mid;
}

std::vector<Eigen::MatrixXd> block_kernel_matrices(const TrainingView& data,
                                                   const Partition& partition,
                                                   const KernelSpec& spec,
                                                   KernelProbe* probe) {
  validate(spec);
  if (partition.n() != data.size())
    throw ArgumentError("block_kernel_matrices: partition does not cover the dataset");
  const auto m = static_cast<Eigen::Index>(partition.block_size());
  std::vector<Eigen::MatrixXd> out;
  out.reserve(partition.k());
  for (const auto& block : partition.blocks()) {
    Eigen::MatrixXd kb(m, m);
    for (Eigen::Index a = 0; a < m; ++a) {
      const std::size_t i = block[static_cast<std::size_t>(a)];
      for (Eigen::Index c = 0; c <= a; ++c) {
        const std::size_t j = block[static_cast<std::size_t>(c)];
        if (probe) probe->record(i, j);
        const double v = kernel_eval(spec, data.row(i), data.row(j));
        kb(a, c) = v;
        kb(c, a) = v;
      }
    }
    out.push_back(std::move(kb));
  }
  return out;
}

double kernel_score(const KernelModel& m, std::size_t block, std::size_t x_index) {
  if (block >= m.blocks.size()) throw ArgumentError("kernel_score: block out of range");
  const auto& members = m.blocks[block];
  const auto it = std::find(members.begin(), members.end(), x_index);
  if (it == members.end()) throw ArgumentError("kernel_score: index not in block");
  const auto row = static_cast<Eigen::Index>(it - members.begin());
  double s = 0.0;
  if (block < m.block_kernels.size()) {
    const auto& kb = m.block_kernels[block];
    for (std::size_t c = 0; c < members.size(); ++c)
      s += kb(row, static_cast<Eigen::Index>(c)) * m.alpha(static_cast<Eigen::Index>(members[c]));
    return s;
  }
  const std::span<const double> xi(m.support.row(static_cast<Eigen::Index>(x_index)).data(), m.dim());
  for (std::size_t j : members) {
    const std::span<const double> xj(m.support.row(static_cast<Eigen::Index>(j)).data(), m.dim());
    s += kernel_eval(m.kernel, xi, xj) * m.alpha(static_cast<Eigen::Index>(j));
  }
  return s;
}

double kernel_predict_score(const KernelModel& m, std::span<const double> x) {
  if (x.size() != m.dim()) throw DimensionError("kernel_predict_score: dimension mismatch");
  auto term = [&](std::size_t j) {
    const double a = m.alpha(static_cast<Eigen::Index>(j));
    if (a == 0.0) return 0.0;
    const std::span<const double> xj(m.support.row(static_cast<Eigen::Index>(j)).data(), m.dim());
    return a * kernel_eval(m.kernel, x, xj);
  };
  double s = 0.0;
  if (m.active_block) {
    for (std::size_t j : m.blocks.at(*m.active_block)) s += term(j);
  } else {
    for (std::size_t j = 0; j < static_cast<std::size_t>(m.alpha.size()); ++j) s += term(j);
  }
  return s;
}

}  // namespace momrob
