// Reference implementations used to cross-check the library. Deliberately
// naive: full sorts, direct loops, dense matrices, long-double or
// multiprecision arithmetic.
#ifndef MOMROB_TESTS_ORACLES_HPP_
#define MOMROB_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "momrob/data.hpp"
#include "momrob/losses.hpp"
#include "momrob/model.hpp"

namespace oracle {

inline double sorted_lower_median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[(v.size() - 1) / 2];
}

inline double direct_mean(std::span<const double> v) {
  long double acc = 0.0L;
  for (double x : v) acc += x;
  return static_cast<double>(acc / static_cast<long double>(v.size()));
}

// Median of block means computed by summing each block with long doubles and
// fully sorting.
inline double median_of_block_means(std::span<const double> values,
                                    const momrob::Partition& p) {
  std::vector<double> means;
  for (const auto& block : p.blocks()) {
    long double acc = 0.0L;
    for (std::size_t i : block) acc += values[i];
    means.push_back(static_cast<double>(acc / static_cast<long double>(block.size())));
  }
  return sorted_lower_median(means);
}

inline double loop_score(const Eigen::VectorXd& u, double b, std::span<const double> x) {
  long double s = b;
  for (std::size_t j = 0; j < x.size(); ++j) s += static_cast<long double>(u(static_cast<Eigen::Index>(j))) * x[j];
  return static_cast<double>(s);
}

inline double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline Eigen::MatrixXd dense_gram(const momrob::Dataset& ds, const momrob::KernelSpec& spec) {
  const auto n = static_cast<Eigen::Index>(ds.size());
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto xi = ds.row(static_cast<std::size_t>(i));
      const auto xj = ds.row(static_cast<std::size_t>(j));
      double v = 0.0;
      if (spec.kind == momrob::KernelKind::Linear) {
        for (std::size_t c = 0; c < xi.size(); ++c) v += xi[c] * xj[c];
      } else {
        double d2 = 0.0;
        for (std::size_t c = 0; c < xi.size(); ++c) d2 += (xi[c] - xj[c]) * (xi[c] - xj[c]);
        v = std::exp(-spec.gamma * d2);
      }
      g(i, j) = v;
    }
  return g;
}

// Full-batch mean gradient of the loss with respect to (u, b).
inline Eigen::VectorXd full_batch_gradient(const momrob::Dataset& ds, const Eigen::VectorXd& theta,
                                           momrob::LossKind loss) {
  const auto p = static_cast<Eigen::Index>(ds.dim());
  Eigen::VectorXd g = Eigen::VectorXd::Zero(p + 1);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto x = ds.row(i);
    double s = theta(p);
    for (Eigen::Index j = 0; j < p; ++j) s += theta(j) * x[static_cast<std::size_t>(j)];
    const int y = ds.label(i);
    double d = 0.0;
    if (loss == momrob::LossKind::Logistic) {
      d = -y / (1.0 + std::exp(y * s));
    } else {
      d = (y * s < 1.0) ? -y : 0.0;
    }
    for (Eigen::Index j = 0; j < p; ++j) g(j) += d * x[static_cast<std::size_t>(j)];
    g(p) += d;
  }
  return g / static_cast<double>(ds.size());
}

// log(1 + exp(-y s)) in 50-digit binary floating point.
inline double logistic_multiprecision(double score, int y) {
  using big = boost::multiprecision::cpp_bin_float_50;
  const big z = -big(y) * big(score);
  return static_cast<double>(boost::multiprecision::log1p(boost::multiprecision::exp(z)));
}

}  // namespace oracle

#endif  // MOMROB_TESTS_ORACLES_HPP_
