#include "momrob/serialize.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "momrob/error.hpp"

namespace momrob {

using nlohmann::json;

namespace {

json vec_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Eigen::VectorXd vec_from_json(const json& j, const char* field) {
  if (!j.is_array()) throw ParseError(std::string("model: field '") + field + "' must be an array", 0);
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  return v;
}

const json& field(const json& j, const char* name) {
  if (!j.contains(name)) throw ParseError(std::string("missing field '") + name + "'", 0);
  return j.at(name);
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text << '\n';
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

std::string to_json(const LinearModel& m) {
  return json{{"type", "linear"}, {"u", vec_to_json(m.u)}, {"b", m.b}}.dump();
}

std::string to_json(const KernelModel& m) {
  json support = json::array();
  for (Eigen::Index r = 0; r < m.support.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.support.cols(); ++c) row.push_back(m.support(r, c));
    support.push_back(row);
  }
  json j{{"type", "kernel"},
         {"alpha", vec_to_json(m.alpha)},
         {"kernel", {{"type", to_string(m.kernel.kind)}, {"gamma", m.kernel.gamma}}},
         {"blocks", m.blocks},
         {"support", support}};
  j["active_block"] = m.active_block ? json(*m.active_block) : json(nullptr);
  return j.dump();
}

AnyModel model_from_json(const std::string& text) {
  const json j = parse_text(text);
  try {
    const std::string type = field(j, "type").get<std::string>();
    if (type == "linear") {
      LinearModel m;
      m.u = vec_from_json(field(j, "u"), "u");
      m.b = field(j, "b").get<double>();
      return m;
    }
    if (type != "kernel") throw ParseError("model: unknown type '" + type + "'", 0);
    KernelModel m;
    m.alpha = vec_from_json(field(j, "alpha"), "alpha");
    const json& k = field(j, "kernel");
    m.kernel.kind = parse_kernel_kind(field(k, "type").get<std::string>());
    m.kernel.gamma = field(k, "gamma").get<double>();
    validate(m.kernel);
    m.blocks = field(j, "blocks").get<std::vector<std::vector<std::size_t>>>();
    const json& support = field(j, "support");
    const auto rows = static_cast<Eigen::Index>(support.size());
    const auto cols = rows > 0 ? static_cast<Eigen::Index>(support[0].size()) : 0;
    if (rows != m.alpha.size()) throw DimensionError("model: alpha and support sizes differ");
    m.support.resize(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      const json& row = support[static_cast<std::size_t>(r)];
      if (static_cast<Eigen::Index>(row.size()) != cols)
        throw DimensionError("model: ragged support matrix");
      for (Eigen::Index c = 0; c < cols; ++c) m.support(r, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
    const json& active = field(j, "active_block");
    if (!active.is_null()) {
      m.active_block = active.get<std::size_t>();
      if (*m.active_block >= m.blocks.size()) throw ParseError("model: active_block out of range", 0);
    }
    for (const auto& block : m.blocks)
      for (std::size_t i : block)
        if (i >= static_cast<std::size_t>(rows)) throw ParseError("model: block index out of range", 0);
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("model: ") + e.what(), 0);
  }
}

void save_model(const AnyModel& m, const std::filesystem::path& path) {
  write_file(path, std::visit([](const auto& model) { return to_json(model); }, m));
}

AnyModel load_model(const std::filesystem::path& path) { return model_from_json(read_file(path)); }

std::string to_json(const MomGdConfig& cfg) {
  return json{{"k", cfg.k},
              {"iterations", cfg.iterations},
              {"schedule", to_string(cfg.schedule.kind)},
              {"eta0", cfg.schedule.eta0},
              {"loss", to_string(cfg.loss)},
              {"seed", cfg.seed.value},
              {"gradient_scale", to_string(cfg.gradient_scale)}}
      .dump();
}

MomGdConfig mom_config_from_json(const std::string& text) {
  const json j = parse_text(text);
  MomGdConfig cfg;
  try {
    if (j.contains("k")) cfg.k = j.at("k").get<std::size_t>();
    if (j.contains("iterations")) cfg.iterations = j.at("iterations").get<std::size_t>();
    if (j.contains("schedule")) cfg.schedule.kind = parse_schedule_kind(j.at("schedule").get<std::string>());
    if (j.contains("eta0")) cfg.schedule.eta0 = j.at("eta0").get<double>();
    if (j.contains("loss")) cfg.loss = parse_loss_kind(j.at("loss").get<std::string>());
    if (j.contains("seed")) cfg.seed.value = j.at("seed").get<std::uint64_t>();
    if (j.contains("gradient_scale"))
      cfg.gradient_scale = parse_gradient_scale(j.at("gradient_scale").get<std::string>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("config: ") + e.what(), 0);
  }
  validate(cfg.schedule);
  return cfg;
}

void write_trace_jsonl(const TrainTrace& trace, const std::filesystem::path& path) {
  if (!trace.recorded) throw ArgumentError("write_trace_jsonl: trace has no recorded selections");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  for (const auto& rec : trace.median_blocks)
    out << json{{"t", rec.t},
                {"partition_seed", rec.partition_seed},
                {"k_med", rec.k_med},
                {"members", rec.members},
                {"objective", rec.objective}}
               .dump()
        << '\n';
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

TrainTrace read_trace_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  TrainTrace trace;
  trace.recorded = true;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      MedianBlockRecord rec;
      rec.t = j.at("t").get<std::size_t>();
      rec.partition_seed = j.at("partition_seed").get<std::uint64_t>();
      rec.k_med = j.at("k_med").get<std::size_t>();
      rec.members = j.at("members").get<std::vector<std::size_t>>();
      rec.objective = j.at("objective").get<double>();
      trace.median_blocks.push_back(std::move(rec));
    } catch (const json::exception& e) {
      throw ParseError("trace line " + std::to_string(row) + ": " + e.what(), row);
    }
  }
  return trace;
}

}  // namespace momrob
