#include "momrob/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "momrob/data.hpp"
#include "momrob/error.hpp"
#include "momrob/experiments.hpp"
#include "momrob/optim.hpp"
#include "momrob/outlier.hpp"
#include "momrob/serialize.hpp"

namespace momrob::cli {
namespace {

const std::vector<std::string> kSubcommands{
    "generate",         "train",        "predict",     "outlier-scores",
    "bench-robustness", "bench-ksweep", "bench-rates", "bench-timing"};

// Raised for semantic usage problems detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Global {
  std::uint64_t seed = 2019;
  std::string output;
};

std::vector<std::size_t> parse_size_list(const std::string& text, const char* flag) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size() || item.empty())
      throw UsageError(std::string(flag) + ": '" + item + "' is not a non-negative integer");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(std::string(flag) + ": empty list");
  return out;
}

std::vector<std::string> parse_name_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

ColumnRef column_ref(const std::string& text) {
  if (!text.empty() && std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return static_cast<std::size_t>(std::stoull(text));
  return text;
}

std::string config_value(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string out;
    for (const auto& item : v) out += (out.empty() ? "" : ",") + config_value(item);
    return out;
  }
  return v.dump();
}

void append_config_args(const nlohmann::json& obj, std::vector<std::string>& out) {
  for (const auto& [key, value] : obj.items()) {
    if (value.is_object()) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) out.push_back("--" + key);
      continue;
    }
    out.push_back("--" + key + "=" + config_value(value));
  }
}

// Splices options from a JSON config file in front of the command-line
// options so that flags given on the command line take precedence.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::optional<std::string> config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config requires a file argument");
      config_path = args[++i];
    } else if (args[i].starts_with("--config=")) {
      config_path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (!config_path) return rest;

  std::ifstream in(*config_path);
  if (!in) throw UsageError("cannot open config file " + *config_path);
  nlohmann::json cfg;
  try {
    cfg = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config file " + *config_path + ": " + e.what());
  }
  if (!cfg.is_object()) throw UsageError("config file must hold a JSON object");

  const auto sub = std::find_if(rest.begin(), rest.end(), [](const std::string& a) {
    return std::find(kSubcommands.begin(), kSubcommands.end(), a) != kSubcommands.end();
  });
  if (sub == rest.end()) return rest;

  for (const auto& [key, value] : cfg.items()) {
    if (value.is_object()) {
      if (std::find(kSubcommands.begin(), kSubcommands.end(), key) == kSubcommands.end())
        throw UsageError("config file: unknown section '" + key + "'");
    } else if (key != "seed" && key != "output") {
      throw UsageError("config file: top-level key '" + key +
                       "' is not a global option; put it under its subcommand section");
    }
  }
  std::vector<std::string> injected;
  append_config_args(cfg, injected);
  if (cfg.contains(*sub)) append_config_args(cfg.at(*sub), injected);

  std::vector<std::string> out(rest.begin(), sub + 1);
  out.insert(out.end(), injected.begin(), injected.end());
  out.insert(out.end(), sub + 1, rest.end());
  return out;
}

std::filesystem::path require_output(const Global& g, const char* what) {
  if (g.output.empty()) throw UsageError(std::string(what) + " requires --output");
  return g.output;
}

// ---------------------------------------------------------------------------

struct GenerateOpts {
  std::string kind = "toy";
  std::size_t inliers = 600;
  std::size_t outliers = 30;
  std::size_t n = 1000;
  double noise = 0.3;
};

void add_generate(CLI::App& app, GenerateOpts& o) {
  auto* sub = app.add_subcommand("generate", "Write a synthetic dataset as CSV");
  sub->add_option("--kind", o.kind, "toy | moons | gaussians")
      ->check(CLI::IsMember({"toy", "moons", "gaussians"}))
      ->capture_default_str();
  sub->add_option("--inliers", o.inliers, "Inliers for the toy set")->capture_default_str();
  sub->add_option("--outliers", o.outliers, "Outliers for the toy set")->capture_default_str();
  sub->add_option("--n", o.n, "Sample count for moons / gaussians")->capture_default_str();
  sub->add_option("--noise", o.noise, "Noise sd for moons")->capture_default_str();
}

int do_generate(const GenerateOpts& o, const Global& g, std::ostream& out) {
  const auto path = require_output(g, "generate");
  const RngSeed seed{g.seed};
  Dataset ds = o.kind == "toy"     ? generate_toy(o.inliers, o.outliers, seed)
               : o.kind == "moons" ? generate_moons(o.n, o.noise, seed)
                                   : generate_gaussians(o.n, seed);
  write_csv(ds, path);
  out << "wrote " << ds.size() << " samples to " << path.string() << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct TrainOpts {
  std::string algo = "mom-logistic";
  std::string data;
  std::string label = "y";
  std::size_t k = 120;
  std::size_t t = 2000;
  double eta0 = 0.5;
  std::string schedule = "inverse-t";
  std::string scale = "sum";
  double beta = 1e-3;
  std::string kernel = "rbf";
  double gamma = 0.0;  // 0 selects 1/p
  bool gamma_auto = false;
  std::string model;
  std::string trace;
};

void add_train(CLI::App& app, TrainOpts& o) {
  auto* sub = app.add_subcommand("train", "Fit a classifier on a CSV dataset");
  sub->add_option("--algo", o.algo,
                  "mom-logistic | mom-hinge | erm-logistic | erm-hinge | fast-klr-mom | klr-mom")
      ->check(CLI::IsMember({"mom-logistic", "mom-hinge", "erm-logistic", "erm-hinge",
                             "fast-klr-mom", "klr-mom"}))
      ->capture_default_str();
  sub->add_option("--data", o.data, "Training CSV")->required();
  sub->add_option("--label", o.label, "Label column name or 0-based index")->capture_default_str();
  sub->add_option("--k", o.k, "Number of blocks K")->capture_default_str();
  sub->add_option("--t", o.t, "Number of descent steps T")->capture_default_str();
  sub->add_option("--eta0", o.eta0, "Initial step size")->capture_default_str();
  sub->add_option("--schedule", o.schedule, "inverse-t | constant")
      ->check(CLI::IsMember({"inverse-t", "constant"}))
      ->capture_default_str();
  sub->add_option("--scale", o.scale,
                  "Linear models: step on the summed (sum) or averaged (mean) block gradient")
      ->check(CLI::IsMember({"sum", "mean"}))
      ->capture_default_str();
  sub->add_option("--beta", o.beta, "Kernel models: penalty weight")->capture_default_str();
  sub->add_option("--kernel", o.kernel, "Kernel models: linear | rbf")
      ->check(CLI::IsMember({"linear", "rbf"}))
      ->capture_default_str();
  sub->add_option("--gamma", o.gamma, "Kernel models: RBF bandwidth (0 selects 1/p)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  sub->add_flag("--gamma-auto", o.gamma_auto, "Kernel models: median-heuristic RBF bandwidth");
  sub->add_option("--model", o.model, "Model JSON path (defaults to --output)");
  sub->add_option("--trace", o.trace, "Median-block trace JSONL path (MOM algorithms)");
}

int do_train(const TrainOpts& o, const Global& g, std::ostream& out) {
  std::filesystem::path model_path = o.model.empty() ? g.output : o.model;
  if (model_path.empty()) throw UsageError("train requires --model or --output");
  const Dataset ds = load_csv(o.data, column_ref(o.label));
  const RngSeed seed{g.seed};
  const StepSchedule schedule{parse_schedule_kind(o.schedule), o.eta0};
  const bool kernel = o.algo == "fast-klr-mom" || o.algo == "klr-mom";
  const bool erm = o.algo.starts_with("erm");
  if (!o.trace.empty() && erm) throw UsageError("--trace is only available for MOM algorithms");

  if (kernel) {
    FastKlrConfig cfg;
    cfg.k = o.k;
    cfg.iterations = o.t;
    cfg.schedule = schedule;
    cfg.beta = o.beta;
    cfg.kernel = {parse_kernel_kind(o.kernel),
                  o.gamma > 0.0 ? o.gamma : 1.0 / static_cast<double>(ds.dim())};
    if (o.gamma_auto) cfg.kernel.gamma = median_heuristic_gamma(ds, seed);
    cfg.seed = seed;
    cfg.record_selections = !o.trace.empty();
    const KernelTrainResult res =
        o.algo == "klr-mom" ? klr_mom_train(ds, cfg) : fast_klr_mom_train(ds, cfg);
    save_model(res.model, model_path);
    if (!o.trace.empty()) write_trace_jsonl(res.trace, o.trace);
    out << o.algo << ": N=" << ds.size() << " K=" << o.k << " T=" << o.t
        << " final MOM objective " << res.trace.final_objective << '\n';
  } else {
    const LossKind loss = o.algo.ends_with("hinge") ? LossKind::Hinge : LossKind::Logistic;
    const GradientScale scale = parse_gradient_scale(o.scale);
    const LinearModel init = LinearModel::zeros(ds.dim());
    if (erm) {
      StepSchedule s = schedule;
      if (scale == GradientScale::BlockSum) s.eta0 *= static_cast<double>(ds.size());
      const LinearModel m = erm_gd_train(ds, init, o.t, s, loss);
      save_model(m, model_path);
      out << o.algo << ": N=" << ds.size() << " T=" << o.t << '\n';
    } else {
      MomGdConfig cfg;
      cfg.k = o.k;
      cfg.iterations = o.t;
      cfg.schedule = schedule;
      cfg.loss = loss;
      cfg.seed = seed;
      cfg.gradient_scale = scale;
      cfg.record_selections = !o.trace.empty();
      const LinearTrainResult res = mom_gd_train(ds, init, cfg);
      save_model(res.model, model_path);
      if (!o.trace.empty()) write_trace_jsonl(res.trace, o.trace);
      out << o.algo << ": N=" << ds.size() << " K=" << o.k << " T=" << o.t
          << " final MOM objective " << res.trace.final_objective << '\n';
    }
  }
  out << "model written to " << model_path.string() << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct PredictOpts {
  std::string model;
  std::string data;
  std::string label = "y";
};

void add_predict(CLI::App& app, PredictOpts& o) {
  auto* sub = app.add_subcommand("predict", "Score a CSV dataset with a saved model");
  sub->add_option("--model", o.model, "Model JSON")->required();
  sub->add_option("--data", o.data, "CSV to score")->required();
  sub->add_option("--label", o.label, "Label column name or 0-based index")->capture_default_str();
}

int do_predict(const PredictOpts& o, const Global& g, std::ostream& out) {
  const AnyModel model = load_model(o.model);
  const Dataset ds = load_csv(o.data, column_ref(o.label));
  const Scorer f = std::visit([](const auto& m) { return make_scorer(m); }, model);
  std::ofstream file;
  std::ostream* sink = &out;
  if (!g.output.empty()) {
    file.open(g.output);
    if (!file) throw std::runtime_error("cannot open " + g.output + " for writing");
    sink = &file;
  }
  *sink << std::setprecision(17) << "index,score,prediction,label\n";
  std::size_t hits = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const double s = f(ds.row(i));
    const int pred = sign_label(s);
    if (pred == ds.label(i)) ++hits;
    *sink << i << ',' << s << ',' << pred << ',' << ds.label(i) << '\n';
  }
  if (!g.output.empty()) {
    if (!file) throw std::runtime_error("write failed for " + g.output);
    out << "accuracy " << static_cast<double>(hits) / static_cast<double>(ds.size()) << " on "
        << ds.size() << " samples; predictions written to " << g.output << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct OutlierOpts {
  std::string trace;
  std::size_t n = 0;
  std::size_t threshold = 1;
  std::string data;
  std::string label = "y";
};

void add_outlier(CLI::App& app, OutlierOpts& o) {
  auto* sub = app.add_subcommand("outlier-scores", "Per-sample median-block selection counts");
  sub->add_option("--trace", o.trace, "Trace JSONL written by train --trace")->required();
  sub->add_option("--n", o.n, "Training set size")->required();
  sub->add_option("--threshold", o.threshold, "Flag samples with count below this value")
      ->capture_default_str();
  sub->add_option("--data", o.data, "Training CSV with an is_outlier column (for precision/recall)");
  sub->add_option("--label", o.label, "Label column name or 0-based index")->capture_default_str();
}

int do_outlier(const OutlierOpts& o, const Global& g, std::ostream& out) {
  const auto path = require_output(g, "outlier-scores");
  const SelectionCounts sc = selection_counts(read_trace_jsonl(o.trace), o.n);
  const std::vector<std::size_t> flagged = flag_outliers(sc, o.threshold);
  std::optional<Dataset> ds;
  if (!o.data.empty()) {
    ds = load_csv(o.data, column_ref(o.label));
    if (ds->size() != o.n) throw UsageError("--data has " + std::to_string(ds->size()) + " rows, --n is " + std::to_string(o.n));
  }
  const bool with_flags = ds && ds->has_outlier_flags();
  write_counts_csv(sc, path, with_flags ? &ds->outlier_flags() : nullptr);
  out << sc.iterations << " steps, " << flagged.size() << " samples with count < " << o.threshold << '\n';
  if (with_flags) {
    const DetectionMetrics m = detection_metrics(flagged, *ds);
    out << "precision " << m.precision << " recall " << m.recall << '\n';
  }
  out << "counts written to " << path.string() << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------

void emit_report(const ExperimentReport& report, const Global& g, std::ostream& out) {
  out << report.name << " (master seed " << report.master_seed << ")\n";
  for (const auto& row : report.summary)
    out << "  " << std::left << std::setw(14) << row.method << " param " << std::setw(6) << row.param
        << " n=" << row.count << " mean " << row.mean << " median " << row.median << " [q1 " << row.q1
        << ", q3 " << row.q3 << "]\n";
  if (report.slope)
    out << "  slope " << report.slope->slope << " (R^2 " << report.slope->r_squared << ")\n";
  for (const auto& w : report.warnings) out << "  warning: " << w << '\n';
  if (!g.output.empty()) {
    std::filesystem::path json_path = g.output;
    std::filesystem::path csv_path = json_path;
    csv_path.replace_extension(".csv");
    if (csv_path == json_path) csv_path += ".records.csv";
    write_report_json(report, json_path);
    write_records_csv(report, csv_path);
    out << "report written to " << json_path.string() << " and " << csv_path.string() << '\n';
  }
}

struct RobustnessOpts {
  RobustnessConfig cfg;
  std::string methods = "mom-logistic,mom-hinge,erm-logistic";
};

void add_robustness(CLI::App& app, RobustnessOpts& o) {
  auto* sub = app.add_subcommand("bench-robustness", "Corrupted-training accuracy comparison");
  sub->add_option("--runs", o.cfg.n_runs, "Number of runs")->capture_default_str();
  sub->add_option("--inliers", o.cfg.n_inliers, "Training inliers")->capture_default_str();
  sub->add_option("--outliers", o.cfg.n_outliers, "Training outliers")->capture_default_str();
  sub->add_option("--test-size", o.cfg.n_test, "Clean test samples")->capture_default_str();
  sub->add_option("--k", o.cfg.k, "Number of blocks K")->capture_default_str();
  sub->add_option("--t", o.cfg.iterations, "Descent steps")->capture_default_str();
  sub->add_option("--eta0", o.cfg.eta0, "Initial per-sample step size")->capture_default_str();
  sub->add_option("--methods", o.methods, "Comma list of mom-logistic, mom-hinge, erm-logistic, erm-hinge")
      ->capture_default_str();
}

struct KSweepOpts {
  KSweepConfig cfg;
  std::string k_values = "1,10,30,60,90,120,200";
  bool no_erm = false;
};

void add_ksweep(CLI::App& app, KSweepOpts& o) {
  auto* sub = app.add_subcommand("bench-ksweep", "Test accuracy as a function of K");
  sub->add_option("--k-values", o.k_values, "Comma list of K values")->capture_default_str();
  sub->add_option("--runs", o.cfg.n_runs, "Number of runs")->capture_default_str();
  sub->add_option("--inliers", o.cfg.n_inliers, "Training inliers")->capture_default_str();
  sub->add_option("--outliers", o.cfg.n_outliers, "Training outliers")->capture_default_str();
  sub->add_option("--test-size", o.cfg.n_test, "Clean test samples")->capture_default_str();
  sub->add_option("--t", o.cfg.iterations, "Descent steps")->capture_default_str();
  sub->add_option("--eta0", o.cfg.eta0, "Initial per-sample step size")->capture_default_str();
  sub->add_flag("--no-erm", o.no_erm, "Skip the ERM baseline");
}

struct RatesOpts {
  RateConfig cfg;
  std::string dataset = "gaussians";
  std::string n_values = "250,500,1000,2000,4000,8000";
  std::string scale = "mean";
  std::string risk = "exact";
};

void add_rates(CLI::App& app, RatesOpts& o) {
  auto* sub = app.add_subcommand("bench-rates", "Excess-risk decay and log-log slope");
  sub->add_option("--dataset", o.dataset, "gaussians | moons")
      ->check(CLI::IsMember({"gaussians", "moons"}))
      ->capture_default_str();
  sub->add_option("--n-values", o.n_values, "Comma list of strictly increasing sample sizes")
      ->capture_default_str();
  sub->add_option("--runs", o.cfg.n_runs, "Runs per sample size")->capture_default_str();
  sub->add_option("--k", o.cfg.k, "Number of blocks K")->capture_default_str();
  sub->add_option("--t", o.cfg.iterations, "Descent steps")->capture_default_str();
  sub->add_option("--eta0", o.cfg.eta0, "Initial step size")->capture_default_str();
  sub->add_option("--scale", o.scale, "sum | mean block gradient")
      ->check(CLI::IsMember({"sum", "mean"}))
      ->capture_default_str();
  sub->add_option("--risk", o.risk, "exact | monte-carlo")
      ->check(CLI::IsMember({"exact", "monte-carlo"}))
      ->capture_default_str();
  sub->add_option("--test-size", o.cfg.mc_test_size, "Monte-Carlo test size")->capture_default_str();
  sub->add_option("--reference-multiplier", o.cfg.reference_multiplier,
                  "Reference ERM sample size as a multiple of n")
      ->capture_default_str();
  sub->add_option("--noise", o.cfg.moons_noise, "Moons noise sd")->capture_default_str();
}

struct TimingOpts {
  TimingConfig cfg;
  std::string algorithms = "mom-logistic,mom-hinge,klr-mom,fast-klr-mom";
  double gamma = 0.5;
};

void add_timing(CLI::App& app, TimingOpts& o) {
  auto* sub = app.add_subcommand("bench-timing", "Wall-clock train+test time per algorithm");
  sub->add_option("--algorithms", o.algorithms, "Comma list of mom-logistic, mom-hinge, klr-mom, fast-klr-mom")
      ->capture_default_str();
  sub->add_option("--n", o.cfg.n, "Training size")->capture_default_str();
  sub->add_option("--test-size", o.cfg.n_test, "Test size")->capture_default_str();
  sub->add_option("--k", o.cfg.k, "Number of blocks K")->capture_default_str();
  sub->add_option("--t-linear", o.cfg.linear_iterations, "Steps for linear MOM")->capture_default_str();
  sub->add_option("--t-kernel", o.cfg.kernel_iterations, "Steps for kernel MOM")->capture_default_str();
  sub->add_option("--eta0", o.cfg.eta0, "Initial step size for linear MOM")->capture_default_str();
  sub->add_option("--gamma", o.gamma, "RBF bandwidth")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Median-of-means robust classification toolkit", "momrob"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "momrob 0.1.0");

  Global g;
  app.add_option("--seed", g.seed, "Master seed")->capture_default_str();
  app.add_option("--output", g.output, "Output path");
  std::string config_path;  // consumed by expand_config before parsing
  app.add_option("--config", config_path, "JSON config file; command-line flags override its values");

  GenerateOpts gen;
  TrainOpts train;
  PredictOpts predict;
  OutlierOpts outlier;
  RobustnessOpts rob;
  KSweepOpts ksweep;
  RatesOpts rates;
  TimingOpts timing;
  add_generate(app, gen);
  add_train(app, train);
  add_predict(app, predict);
  add_outlier(app, outlier);
  add_robustness(app, rob);
  add_ksweep(app, ksweep);
  add_rates(app, rates);
  add_timing(app, timing);
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    std::vector<std::string> args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    const RngSeed master{g.seed};
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "generate") return do_generate(gen, g, out);
    if (name == "train") return do_train(train, g, out);
    if (name == "predict") return do_predict(predict, g, out);
    if (name == "outlier-scores") return do_outlier(outlier, g, out);
    if (name == "bench-robustness") {
      rob.cfg.methods = parse_name_list(rob.methods);
      rob.cfg.master_seed = master;
      emit_report(run_robustness_experiment(rob.cfg), g, out);
    } else if (name == "bench-ksweep") {
      ksweep.cfg.k_values = parse_size_list(ksweep.k_values, "--k-values");
      ksweep.cfg.include_erm_baseline = !ksweep.no_erm;
      ksweep.cfg.master_seed = master;
      emit_report(run_k_sweep(ksweep.cfg), g, out);
    } else if (name == "bench-rates") {
      rates.cfg.dataset = parse_rate_dataset(rates.dataset);
      rates.cfg.n_values = parse_size_list(rates.n_values, "--n-values");
      rates.cfg.gradient_scale = parse_gradient_scale(rates.scale);
      rates.cfg.risk = rates.risk == "exact" ? RiskEvaluation::Exact : RiskEvaluation::MonteCarlo;
      rates.cfg.master_seed = master;
      emit_report(run_rate_experiment(rates.cfg), g, out);
    } else if (name == "bench-timing") {
      timing.cfg.algorithms = parse_name_list(timing.algorithms);
      timing.cfg.kernel = {KernelKind::Rbf, timing.gamma};
      timing.cfg.master_seed = master;
      emit_report(run_timing_probe(timing.cfg), g, out);
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace momrob::cli
