#include "momrob/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>

#include "momrob/error.hpp"

namespace momrob {

Dataset::Dataset(FeatureMatrix features, std::vector<int> labels,
                 std::optional<std::vector<bool>> is_outlier)
    : features_(std::move(features)),
      labels_(std::move(labels)),
      is_outlier_(std::move(is_outlier)) {
  if (labels_.empty()) throw ArgumentError("dataset must contain at least one sample");
  if (static_cast<std::size_t>(features_.rows()) != labels_.size())
    throw DimensionError("dataset: feature rows and labels differ in length");
  if (is_outlier_ && is_outlier_->size() != labels_.size())
    throw DimensionError("dataset: outlier flags and labels differ in length");
  for (int y : labels_)
    if (y != 1 && y != -1) throw LabelError("dataset: label must be -1 or +1");
  if (!features_.allFinite()) throw NumericError("dataset: non-finite feature value");
}

Dataset Dataset::from_samples(const std::vector<Sample>& samples) {
  if (samples.empty()) throw ArgumentError("dataset must contain at least one sample");
  const std::size_t p = samples.front().x.size();
  const bool flagged = samples.front().is_outlier.has_value();
  FeatureMatrix x(static_cast<Eigen::Index>(samples.size()), static_cast<Eigen::Index>(p));
  std::vector<int> y;
  std::vector<bool> flags;
  y.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Sample& s = samples[i];
    if (s.x.size() != p) throw DimensionError("dataset: samples differ in dimension");
    if (s.is_outlier.has_value() != flagged)
      throw ArgumentError("dataset: outlier flags must be given for all samples or none");
    std::copy(s.x.begin(), s.x.end(), x.row(static_cast<Eigen::Index>(i)).data());
    y.push_back(s.y);
    if (flagged) flags.push_back(*s.is_outlier);
  }
  return Dataset(std::move(x), std::move(y),
                 flagged ? std::optional<std::vector<bool>>(std::move(flags)) : std::nullopt);
}

const std::vector<bool>& Dataset::outlier_flags() const {
  if (!is_outlier_) throw ArgumentError("dataset carries no outlier flags");
  return *is_outlier_;
}

Sample Dataset::sample(std::size_t i) const {
  auto r = row(i);
  Sample s{std::vector<double>(r.begin(), r.end()), labels_[i], std::nullopt};
  if (is_outlier_) s.is_outlier = (*is_outlier_)[i];
  return s;
}

// ---------------------------------------------------------------------------

Partition::Partition(std::size_t n, std::vector<std::vector<std::size_t>> blocks)
    : n_(n), block_size_(0), blocks_(std::move(blocks)), owner_(n, 0) {
  if (blocks_.empty() || blocks_.size() > n_)
    throw ArgumentError("partition: need 1 <= K <= N");
  block_size_ = n_ / blocks_.size();
  std::fill(owner_.begin(), owner_.end(), blocks_.size());
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    auto& block = blocks_[k];
    if (block.size() != block_size_)
      throw ArgumentError("partition: every block must hold floor(N/K) indices");
    std::sort(block.begin(), block.end());
    for (std::size_t i : block) {
      if (i >= n_) throw ArgumentError("partition: index out of range");
      if (owner_[i] != blocks_.size()) throw ArgumentError("partition: blocks overlap");
      owner_[i] = k;
    }
  }
}

Partition random_equipartition(std::size_t n, std::size_t k, Rng& rng) {
  if (k == 0 || k > n) throw ArgumentError("random_equipartition: need 1 <= k <= n");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  rng.shuffle(std::span<std::size_t>(perm));
  const std::size_t m = n / k;
  std::vector<std::vector<std::size_t>> blocks(k);
  for (std::size_t j = 0; j < k; ++j)
    blocks[j].assign(perm.begin() + static_cast<std::ptrdiff_t>(j * m),
                     perm.begin() + static_cast<std::ptrdiff_t>((j + 1) * m));
  return Partition(n, std::move(blocks));
}

// ---------------------------------------------------------------------------

namespace {

struct Draw {
  double x0, x1;
  int y;
  bool outlier;
};

Dataset shuffled_dataset(std::vector<Draw> draws, Rng& rng, bool with_flags) {
  rng.shuffle(std::span<Draw>(draws));
  FeatureMatrix x(static_cast<Eigen::Index>(draws.size()), 2);
  std::vector<int> y;
  std::vector<bool> flags;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    x(static_cast<Eigen::Index>(i), 0) = draws[i].x0;
    x(static_cast<Eigen::Index>(i), 1) = draws[i].x1;
    y.push_back(draws[i].y);
    flags.push_back(draws[i].outlier);
  }
  if (with_flags) return Dataset(std::move(x), std::move(y), std::move(flags));
  return Dataset(std::move(x), std::move(y));
}

}  // namespace

Dataset generate_toy(std::size_t n_inliers, std::size_t n_outliers, RngSeed seed) {
  if (n_inliers < 2) throw ArgumentError("generate_toy: need at least two inliers");
  Rng rng(seed);
  const double sd_in = std::sqrt(1.4);
  const double sd_out = std::sqrt(0.1);
  const std::size_t n_pos = n_inliers / 2;
  std::vector<Draw> draws;
  draws.reserve(n_inliers + n_outliers);
  for (std::size_t i = 0; i < n_inliers; ++i) {
    const bool pos = i < n_pos;
    const double c = pos ? -1.0 : 1.0;
    const double a = rng.normal(c, sd_in);
    const double b = rng.normal(c, sd_in);
    draws.push_back({a, b, pos ? 1 : -1, false});
  }
  for (std::size_t i = 0; i < n_outliers; ++i) {
    const double a = rng.normal(24.0, sd_out);
    const double b = rng.normal(8.0, sd_out);
    draws.push_back({a, b, 1, true});
  }
  return shuffled_dataset(std::move(draws), rng, true);
}

Dataset generate_moons(std::size_t n, double noise_sd, RngSeed seed) {
  if (n < 2) throw ArgumentError("generate_moons: need n >= 2");
  if (!(noise_sd >= 0.0) || !std::isfinite(noise_sd))
    throw ArgumentError("generate_moons: noise_sd must be a finite non-negative number");
  Rng rng(seed);
  const std::size_t n_upper = (n + 1) / 2;
  const std::size_t n_lower = n - n_upper;
  auto grid = [](std::size_t i, std::size_t count) {
    return count <= 1 ? 0.0 : std::numbers::pi * static_cast<double>(i) / static_cast<double>(count - 1);
  };
  std::vector<Draw> draws;
  draws.reserve(n);
  for (std::size_t i = 0; i < n_upper; ++i) {
    const double t = grid(i, n_upper);
    draws.push_back({std::cos(t), std::sin(t), 1, false});
  }
  for (std::size_t i = 0; i < n_lower; ++i) {
    const double t = grid(i, n_lower);
    draws.push_back({1.0 - std::cos(t), 0.5 - std::sin(t), -1, false});
  }
  if (noise_sd > 0.0) {
    for (auto& d : draws) {
      d.x0 += rng.normal(0.0, noise_sd);
      d.x1 += rng.normal(0.0, noise_sd);
    }
  }
  return shuffled_dataset(std::move(draws), rng, false);
}

Dataset generate_gaussians(std::size_t n, RngSeed seed) {
  if (n < 2) throw ArgumentError("generate_gaussians: need n >= 2");
  Rng rng(seed);
  const std::size_t n_pos = (n + 1) / 2;
  std::vector<Draw> draws;
  draws.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool pos = i < n_pos;
    const double c = pos ? -1.0 : 1.0;
    const double a = rng.normal(c, 1.4);
    const double b = rng.normal(c, 1.4);
    draws.push_back({a, b, pos ? 1 : -1, false});
  }
  return shuffled_dataset(std::move(draws), rng, false);
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::optional<double> parse_number(const std::string& field) {
  if (field.empty()) return std::nullopt;
  const char* begin = field.data();
  const char* end = begin + field.size();
  if (*begin == '+') ++begin;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

int parse_label(const std::string& field, std::size_t row) {
  const auto v = parse_number(field);
  if (!v) throw ParseError("row " + std::to_string(row) + ": label '" + field + "' is not numeric", row);
  if (*v == 1.0) return 1;
  if (*v == -1.0 || *v == 0.0) return -1;
  throw LabelError("row " + std::to_string(row) + ": unknown label value '" + field + "'");
}

bool parse_flag(const std::string& field, std::size_t row) {
  if (field == "1" || field == "true" || field == "True") return true;
  if (field == "0" || field == "false" || field == "False") return false;
  throw ParseError("row " + std::to_string(row) + ": bad is_outlier value '" + field + "'", row);
}

}  // namespace

Dataset load_csv(const std::filesystem::path& path, const ColumnRef& label_column) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'", 0);

  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    rows.emplace_back(line_no, split_fields(line));
  }
  if (rows.empty()) throw ParseError("'" + path.string() + "' contains no rows", 0);

  std::optional<std::vector<std::string>> header;
  {
    const auto& first = rows.front().second;
    const bool numeric = std::all_of(first.begin(), first.end(),
                                     [](const std::string& f) { return parse_number(f).has_value(); });
    if (!numeric) {
      header = first;
      rows.erase(rows.begin());
    }
  }
  if (rows.empty()) throw ParseError("'" + path.string() + "' has a header but no data rows", 0);

  const std::size_t width = header ? header->size() : rows.front().second.size();
  std::size_t label_idx = 0;
  if (const auto* name = std::get_if<std::string>(&label_column)) {
    if (!header) throw ArgumentError("label column '" + *name + "' given by name but the file has no header");
    const auto it = std::find(header->begin(), header->end(), *name);
    if (it == header->end()) throw ArgumentError("no column named '" + *name + "'");
    label_idx = static_cast<std::size_t>(it - header->begin());
  } else {
    label_idx = std::get<std::size_t>(label_column);
  }
  if (label_idx >= width) throw ArgumentError("label column index out of range");

  std::optional<std::size_t> flag_idx;
  if (header) {
    const auto it = std::find(header->begin(), header->end(), "is_outlier");
    if (it != header->end()) flag_idx = static_cast<std::size_t>(it - header->begin());
  }
  if (flag_idx && *flag_idx == label_idx) throw ArgumentError("is_outlier cannot be the label column");

  const std::size_t p = width - 1 - (flag_idx ? 1 : 0);
  FeatureMatrix x(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(p));
  std::vector<int> labels;
  std::vector<bool> flags;
  labels.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& [row_no, fields] = rows[r];
    if (fields.size() != width)
      throw DimensionError("row " + std::to_string(row_no) + ": expected " + std::to_string(width) +
                           " fields, found " + std::to_string(fields.size()));
    std::size_t col = 0;
    for (std::size_t c = 0; c < width; ++c) {
      if (c == label_idx) {
        labels.push_back(parse_label(fields[c], row_no));
      } else if (flag_idx && c == *flag_idx) {
        flags.push_back(parse_flag(fields[c], row_no));
      } else {
        const auto v = parse_number(fields[c]);
        if (!v || !std::isfinite(*v))
          throw ParseError("row " + std::to_string(row_no) + ": malformed value '" + fields[c] + "'", row_no);
        x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col++)) = *v;
      }
    }
  }
  if (flag_idx) return Dataset(std::move(x), std::move(labels), std::move(flags));
  return Dataset(std::move(x), std::move(labels));
}

void write_csv(const Dataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out.precision(17);
  for (std::size_t j = 0; j < ds.dim(); ++j) out << 'x' << j << ',';
  out << 'y';
  if (ds.has_outlier_flags()) out << ",is_outlier";
  out << '\n';
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (double v : ds.row(i)) out << v << ',';
    out << ds.label(i);
    if (ds.has_outlier_flags()) out << ',' << (ds.outlier_flags()[i] ? 1 : 0);
    out << '\n';
  }
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace momrob
