#ifndef MOMROB_TESTS_HELPERS_HPP_
#define MOMROB_TESTS_HELPERS_HPP_

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "momrob/data.hpp"
#include "momrob/rng.hpp"

namespace testing_support {

inline std::filesystem::path temp_path(const std::string& name) {
  const std::filesystem::path dir{MOMROB_TEST_TMPDIR};
  std::filesystem::create_directories(dir);
  return dir / name;
}

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::vector<double> normal_values(std::size_t n, std::uint64_t seed) {
  momrob::Rng rng(momrob::RngSeed{seed});
  std::vector<double> v(n);
  for (double& x : v) x = rng.normal();
  return v;
}

// Random dataset with Gaussian features and labels from a noisy linear rule.
inline momrob::Dataset random_dataset(std::size_t n, std::size_t p, std::uint64_t seed) {
  momrob::Rng rng(momrob::RngSeed{seed});
  momrob::FeatureMatrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  std::vector<int> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      const double v = rng.normal();
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      s += v * (j % 2 == 0 ? 1.0 : -0.5);
    }
    y[i] = s + 0.5 * rng.normal() >= 0.0 ? 1 : -1;
  }
  return momrob::Dataset(std::move(x), std::move(y));
}

}  // namespace testing_support

#endif  // MOMROB_TESTS_HELPERS_HPP_
