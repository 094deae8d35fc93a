#include "momrob/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "momrob/error.hpp"

namespace momrob {

Scorer make_scorer(const LinearModel& m) {
  return [m](std::span<const double> x) { return linear_score(m, x); };
}

Scorer make_scorer(const KernelModel& m) {
  auto shared = std::make_shared<const KernelModel>(m);
  return [shared](std::span<const double> x) { return kernel_predict_score(*shared, x); };
}

double accuracy(const Scorer& f, const Dataset& test) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < test.size(); ++i)
    if (sign_label(f(test.row(i))) == test.label(i)) ++hits;
  return static_cast<double>(hits) / static_cast<double>(test.size());
}

std::vector<double> ExperimentReport::values(const std::string& method, double param) const {
  std::vector<double> out;
  for (const auto& r : records)
    if (r.error.empty() && r.method == method && r.param == param) out.push_back(r.value);
  return out;
}

const SummaryRow* ExperimentReport::find_summary(const std::string& method, double param) const {
  for (const auto& row : summary)
    if (row.method == method && row.param == param) return &row;
  return nullptr;
}

namespace {

double quantile_sorted(const std::vector<double>& v, double q) {
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records) {
  std::vector<std::pair<std::string, double>> keys;
  for (const auto& r : records) {
    const std::pair<std::string, double> key{r.method, r.param};
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
  }
  std::vector<SummaryRow> rows;
  for (const auto& [method, param] : keys) {
    std::vector<double> v;
    for (const auto& r : records)
      if (r.error.empty() && r.method == method && r.param == param) v.push_back(r.value);
    SummaryRow row;
    row.method = method;
    row.param = param;
    row.count = v.size();
    if (!v.empty()) {
      std::sort(v.begin(), v.end());
      double acc = 0.0;
      for (double x : v) acc += x;
      row.mean = acc / static_cast<double>(v.size());
      row.median = quantile_sorted(v, 0.5);
      row.q1 = quantile_sorted(v, 0.25);
      row.q3 = quantile_sorted(v, 0.75);
      row.min = v.front();
      row.max = v.back();
    }
    rows.push_back(row);
  }
  return rows;
}

double median_value(std::vector<double> values) {
  if (values.empty()) throw ArgumentError("median_value: empty input");
  std::sort(values.begin(), values.end());
  return quantile_sorted(values, 0.5);
}

SlopeFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionError("fit_line: x and y differ in length");
  if (x.size() < 2) throw ArgumentError("fit_line: need at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw ArgumentError("fit_line: x values are all equal");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += e * e;
  }
  fit.r_squared = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
  fit.log_n.assign(x.begin(), x.end());
  fit.log_excess.assign(y.begin(), y.end());
  return fit;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename F>
RunRecord run_guarded(std::string method, double param, RngSeed seed, F&& body) {
  RunRecord rec;
  rec.method = std::move(method);
  rec.param = param;
  rec.seed = seed.value;
  const auto start = Clock::now();
  try {
    body(rec);
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  rec.wall_seconds = seconds_since(start);
  return rec;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string join(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

void finish(ExperimentReport& report) {
  report.summary = summarize(report.records);
  for (const auto& r : report.records)
    if (!r.error.empty())
      report.warnings.push_back(r.method + " (param " + fmt(r.param) + ", seed " +
                                std::to_string(r.seed) + ") failed: " + r.error);
}

LossKind method_loss(const std::string& method) {
  if (method == "mom-logistic" || method == "erm-logistic") return LossKind::Logistic;
  if (method == "mom-hinge" || method == "erm-hinge") return LossKind::Hinge;
  throw ArgumentError("unknown method '" + method +
                      "' (expected mom-logistic, mom-hinge, erm-logistic or erm-hinge)");
}

double train_and_score(const std::string& method, const Dataset& train, const Dataset& test,
                       std::size_t k, std::size_t iterations, double eta0, RngSeed seed,
                       bool relax = false) {
  const LossKind loss = method_loss(method);
  const LinearModel init = LinearModel::zeros(train.dim());
  if (method.starts_with("erm")) {
    const StepSchedule schedule{ScheduleKind::InverseT, eta0 * static_cast<double>(train.size())};
    return accuracy(make_scorer(erm_gd_train(train, init, iterations, schedule, loss)), test);
  }
  MomGdConfig cfg;
  cfg.k = k;
  cfg.iterations = iterations;
  cfg.schedule = {ScheduleKind::InverseT, eta0};
  cfg.loss = loss;
  cfg.seed = seed;
  cfg.relax_block_range = relax;
  return accuracy(make_scorer(mom_gd_train(train, init, cfg).model), test);
}

}  // namespace

ExperimentReport run_robustness_experiment(const RobustnessConfig& cfg) {
  if (cfg.n_runs == 0) throw ArgumentError("robustness: n_runs must be >= 1");
  if (cfg.methods.empty()) throw ArgumentError("robustness: no methods given");
  for (const auto& m : cfg.methods) method_loss(m);
  ExperimentReport report;
  report.name = "robustness";
  report.master_seed = cfg.master_seed.value;
  std::string methods;
  for (const auto& m : cfg.methods) methods += (methods.empty() ? "" : ",") + m;
  report.config = {{"n_runs", std::to_string(cfg.n_runs)},
                   {"n_inliers", std::to_string(cfg.n_inliers)},
                   {"n_outliers", std::to_string(cfg.n_outliers)},
                   {"n_test", std::to_string(cfg.n_test)},
                   {"k", std::to_string(cfg.k)},
                   {"iterations", std::to_string(cfg.iterations)},
                   {"eta0", fmt(cfg.eta0)},
                   {"methods", methods}};
  for (std::size_t r = 0; r < cfg.n_runs; ++r) {
    const RngSeed seed = run_seed(cfg.master_seed, r);
    const Dataset train = generate_toy(cfg.n_inliers, cfg.n_outliers, derive_seed(seed, 0));
    const Dataset test = generate_toy(cfg.n_test, 0, derive_seed(seed, 1));
    for (const auto& method : cfg.methods)
      report.records.push_back(run_guarded(method, 0.0, seed, [&](RunRecord& rec) {
        rec.value = train_and_score(method, train, test, cfg.k, cfg.iterations, cfg.eta0,
                                    derive_seed(seed, 2), true);
      }));
  }
  finish(report);
  return report;
}

ExperimentReport run_k_sweep(const KSweepConfig& cfg) {
  if (cfg.n_runs == 0) throw ArgumentError("k-sweep: n_runs must be >= 1");
  if (cfg.k_values.empty()) throw ArgumentError("k-sweep: no K values given");
  const std::size_t n_train = cfg.n_inliers + cfg.n_outliers;
  for (std::size_t k : cfg.k_values)
    if (k == 0 || 2 * k > n_train)
      throw ArgumentError("k-sweep: K = " + std::to_string(k) + " must lie in [1, " +
                          std::to_string(n_train / 2) + "]");
  ExperimentReport report;
  report.name = "k-sweep";
  report.master_seed = cfg.master_seed.value;
  report.config = {{"n_runs", std::to_string(cfg.n_runs)},
                   {"n_inliers", std::to_string(cfg.n_inliers)},
                   {"n_outliers", std::to_string(cfg.n_outliers)},
                   {"n_test", std::to_string(cfg.n_test)},
                   {"iterations", std::to_string(cfg.iterations)},
                   {"eta0", fmt(cfg.eta0)},
                   {"k_values", join(cfg.k_values)},
                   {"include_erm_baseline", cfg.include_erm_baseline ? "true" : "false"}};
  for (std::size_t r = 0; r < cfg.n_runs; ++r) {
    const RngSeed seed = run_seed(cfg.master_seed, r);
    const Dataset train = generate_toy(cfg.n_inliers, cfg.n_outliers, derive_seed(seed, 0));
    const Dataset test = generate_toy(cfg.n_test, 0, derive_seed(seed, 1));
    for (std::size_t k : cfg.k_values)
      report.records.push_back(
          run_guarded("mom-logistic", static_cast<double>(k), seed, [&](RunRecord& rec) {
            rec.value = train_and_score("mom-logistic", train, test, k, cfg.iterations, cfg.eta0,
                                        derive_seed(seed, 2), true);
          }));
    if (cfg.include_erm_baseline)
      report.records.push_back(run_guarded("erm-logistic", 0.0, seed, [&](RunRecord& rec) {
        rec.value = train_and_score("erm-logistic", train, test, 1, cfg.iterations, cfg.eta0,
                                    derive_seed(seed, 2));
      }));
  }
  finish(report);
  return report;
}

RateDataset parse_rate_dataset(std::string_view text) {
  if (text == "moons") return RateDataset::Moons;
  if (text == "gaussians") return RateDataset::Gaussians;
  throw ArgumentError("unknown dataset '" + std::string(text) + "' (expected moons or gaussians)");
}

std::string to_string(RateDataset kind) { return kind == RateDataset::Moons ? "moons" : "gaussians"; }

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

// Probability that a point c + N(0, sd^2 I) is misclassified when its label is y.
double gaussian_error(const LinearModel& m, double c0, double c1, double sd, int y) {
  const double norm = m.u.norm();
  const double mean_score = m.u(0) * c0 + m.u(1) * c1 + m.b;
  if (norm == 0.0) return (sign_label(m.b) == y) ? 0.0 : 1.0;
  const double z = mean_score / (sd * norm);
  return y > 0 ? normal_cdf(-z) : normal_cdf(z);
}

Dataset generate_rate_data(RateDataset kind, std::size_t n, double noise, RngSeed seed) {
  return kind == RateDataset::Moons ? generate_moons(n, noise, seed) : generate_gaussians(n, seed);
}

}  // namespace

double population_zero_one_risk(RateDataset dataset, const LinearModel& m, double moons_noise) {
  if (m.dim() != 2) throw DimensionError("population risk is defined for 2-D models only");
  if (!m.u.allFinite() || !std::isfinite(m.b)) throw NumericError("population risk: non-finite model");
  if (dataset == RateDataset::Gaussians)
    return 0.5 * (gaussian_error(m, -1.0, -1.0, 1.4, 1) + gaussian_error(m, 1.0, 1.0, 1.4, -1));

  if (!(moons_noise > 0.0)) throw ArgumentError("population risk: moons noise must be positive");
  // Composite Simpson over t in [0, pi] for each half circle.
  constexpr int kIntervals = 4096;
  const double h = std::numbers::pi / kIntervals;
  double acc = 0.0;
  for (int i = 0; i <= kIntervals; ++i) {
    const double t = h * i;
    const double w = (i == 0 || i == kIntervals) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    const double upper = gaussian_error(m, std::cos(t), std::sin(t), moons_noise, 1);
    const double lower = gaussian_error(m, 1.0 - std::cos(t), 0.5 - std::sin(t), moons_noise, -1);
    acc += w * (upper + lower);
  }
  return 0.5 * (acc * h / 3.0) / std::numbers::pi;
}

ExperimentReport run_rate_experiment(const RateConfig& cfg) {
  if (cfg.n_values.size() < 4) throw ArgumentError("rates: need at least four sample sizes");
  for (std::size_t i = 1; i < cfg.n_values.size(); ++i)
    if (cfg.n_values[i] <= cfg.n_values[i - 1])
      throw ArgumentError("rates: sample sizes must be strictly increasing");
  if (cfg.n_runs == 0) throw ArgumentError("rates: n_runs must be >= 1");
  if (cfg.reference_multiplier == 0) throw ArgumentError("rates: reference multiplier must be >= 1");
  ExperimentReport report;
  report.name = "rates-" + to_string(cfg.dataset);
  report.master_seed = cfg.master_seed.value;
  report.config = {{"dataset", to_string(cfg.dataset)},
                   {"n_values", join(cfg.n_values)},
                   {"n_runs", std::to_string(cfg.n_runs)},
                   {"k", std::to_string(cfg.k)},
                   {"iterations", std::to_string(cfg.iterations)},
                   {"eta0", fmt(cfg.eta0)},
                   {"gradient_scale", to_string(cfg.gradient_scale)},
                   {"reference_multiplier", std::to_string(cfg.reference_multiplier)},
                   {"risk", cfg.risk == RiskEvaluation::Exact ? "exact" : "monte-carlo"},
                   {"mc_test_size", std::to_string(cfg.mc_test_size)},
                   {"moons_noise", fmt(cfg.moons_noise)}};

  for (std::size_t ni = 0; ni < cfg.n_values.size(); ++ni) {
    const std::size_t n = cfg.n_values[ni];
    const RngSeed point_seed = run_seed(cfg.master_seed, ni);
    for (std::size_t r = 0; r < cfg.n_runs; ++r) {
      const RngSeed seed = derive_seed(point_seed, r);
      report.records.push_back(
          run_guarded("mom-logistic", static_cast<double>(n), seed, [&](RunRecord& rec) {
            const Dataset train = generate_rate_data(cfg.dataset, n, cfg.moons_noise, derive_seed(seed, 0));
            const Dataset ref = generate_rate_data(cfg.dataset, cfg.reference_multiplier * n,
                                                   cfg.moons_noise, derive_seed(seed, 1));
            const LinearModel f_ref = fit_logistic_erm(ref);
            MomGdConfig mc;
            mc.k = cfg.k;
            mc.iterations = cfg.iterations;
            mc.schedule = {ScheduleKind::InverseT, cfg.eta0};
            mc.loss = LossKind::Logistic;
            mc.seed = derive_seed(seed, 2);
            mc.gradient_scale = cfg.gradient_scale;
            const LinearModel f_hat = mom_gd_train(train, LinearModel::zeros(2), mc).model;
            double excess = 0.0;
            if (cfg.risk == RiskEvaluation::Exact) {
              excess = population_zero_one_risk(cfg.dataset, f_hat, cfg.moons_noise) -
                       population_zero_one_risk(cfg.dataset, f_ref, cfg.moons_noise);
            } else {
              const Dataset test = generate_rate_data(cfg.dataset, cfg.mc_test_size,
                                                      cfg.moons_noise, derive_seed(seed, 3));
              excess = accuracy(make_scorer(f_ref), test) - accuracy(make_scorer(f_hat), test);
            }
            rec.value = std::abs(excess);
            rec.detail = excess;
          }));
    }
  }
  finish(report);

  std::vector<double> xs, ys;
  std::vector<double> dropped;
  for (std::size_t n : cfg.n_values) {
    const SummaryRow* row = report.find_summary("mom-logistic", static_cast<double>(n));
    if (row == nullptr || row->count == 0 || !(row->mean > 0.0)) {
      dropped.push_back(static_cast<double>(n));
      continue;
    }
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(row->mean));
  }
  if (xs.size() >= 2) {
    SlopeFit fit = fit_line(xs, ys);
    fit.dropped_n = dropped;
    report.slope = fit;
  } else {
    report.warnings.push_back("rates: fewer than two sample sizes with positive mean excess risk");
  }
  return report;
}

std::size_t block_kernel_entries(std::size_t n, std::size_t k) {
  if (k == 0 || k > n) throw ArgumentError("block_kernel_entries: need 1 <= K <= N");
  const std::size_t m = n / k;
  return k * m * m;
}

ExperimentReport run_timing_probe(const TimingConfig& cfg) {
  if (cfg.algorithms.empty()) throw ArgumentError("timing: no algorithms given");
  for (const auto& a : cfg.algorithms)
    if (a != "mom-logistic" && a != "mom-hinge" && a != "klr-mom" && a != "fast-klr-mom")
      throw ArgumentError("timing: unknown algorithm '" + a +
                          "' (expected mom-logistic, mom-hinge, klr-mom or fast-klr-mom)");
  validate(cfg.kernel);
  ExperimentReport report;
  report.name = "timing";
  report.master_seed = cfg.master_seed.value;
  std::string algos;
  for (const auto& a : cfg.algorithms) algos += (algos.empty() ? "" : ",") + a;
  report.config = {{"algorithms", algos},
                   {"n", std::to_string(cfg.n)},
                   {"n_test", std::to_string(cfg.n_test)},
                   {"k", std::to_string(cfg.k)},
                   {"linear_iterations", std::to_string(cfg.linear_iterations)},
                   {"kernel_iterations", std::to_string(cfg.kernel_iterations)},
                   {"eta0", fmt(cfg.eta0)},
                   {"kernel", to_string(cfg.kernel.kind)},
                   {"gamma", fmt(cfg.kernel.gamma)},
                   {"block_kernel_entries", std::to_string(block_kernel_entries(cfg.n, cfg.k))}};

  const Dataset train = generate_gaussians(cfg.n, derive_seed(cfg.master_seed, 0));
  const Dataset test = generate_gaussians(cfg.n_test, derive_seed(cfg.master_seed, 1));
  const RngSeed train_seed = derive_seed(cfg.master_seed, 2);

  auto run_once = [&](const std::string& algo) {
    if (algo == "mom-logistic" || algo == "mom-hinge")
      return train_and_score(algo, train, test, cfg.k, cfg.linear_iterations, cfg.eta0, train_seed);
    FastKlrConfig kc;
    kc.k = cfg.k;
    kc.iterations = cfg.kernel_iterations;
    kc.kernel = cfg.kernel;
    kc.seed = train_seed;
    const KernelTrainResult res =
        algo == "klr-mom" ? klr_mom_train(train, kc) : fast_klr_mom_train(train, kc);
    return accuracy(make_scorer(res.model), test);
  };

  for (const auto& algo : cfg.algorithms) {
    try {
      run_once(algo);  // warm-up, discarded
    } catch (const std::exception&) {
      // the timed run below records the failure
    }
    report.records.push_back(
        run_guarded(algo, static_cast<double>(cfg.n), cfg.master_seed,
                    [&](RunRecord& rec) { rec.value = run_once(algo); }));
  }
  double fastest = 0.0;
  for (const auto& r : report.records)
    if (r.error.empty() && (fastest == 0.0 || r.wall_seconds < fastest)) fastest = r.wall_seconds;
  for (auto& r : report.records)
    if (r.error.empty() && fastest > 0.0) r.detail = r.wall_seconds / fastest;
  finish(report);
  return report;
}

std::string report_to_json(const ExperimentReport& report) {
  using nlohmann::json;
  json j;
  j["name"] = report.name;
  j["master_seed"] = report.master_seed;
  json config = json::object();
  for (const auto& [key, value] : report.config) config[key] = value;
  j["config"] = config;
  json records = json::array();
  for (const auto& r : report.records) {
    json rec = {{"method", r.method}, {"param", r.param},   {"seed", r.seed},
                {"value", r.value},   {"detail", r.detail}, {"wall_seconds", r.wall_seconds}};
    if (!r.error.empty()) rec["error"] = r.error;
    records.push_back(rec);
  }
  j["records"] = records;
  json summary = json::array();
  for (const auto& s : report.summary)
    summary.push_back({{"method", s.method}, {"param", s.param}, {"count", s.count},
                       {"mean", s.mean},     {"median", s.median}, {"q1", s.q1},
                       {"q3", s.q3},         {"min", s.min},       {"max", s.max}});
  j["summary"] = summary;
  if (report.slope) {
    const auto& f = *report.slope;
    j["slope"] = {{"slope", f.slope},   {"intercept", f.intercept},   {"r_squared", f.r_squared},
                  {"log_n", f.log_n},   {"log_excess", f.log_excess}, {"dropped_n", f.dropped_n}};
  }
  j["warnings"] = report.warnings;
  return j.dump(2);
}

void write_report_json(const ExperimentReport& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << report_to_json(report) << '\n';
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_records_csv(const ExperimentReport& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.precision(17);
  out << "method,param,seed,value,detail,wall_seconds,error\n";
  for (const auto& r : report.records) {
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    out << r.method << ',' << r.param << ',' << r.seed << ',' << r.value << ',' << r.detail << ','
        << r.wall_seconds << ',' << err << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace momrob
