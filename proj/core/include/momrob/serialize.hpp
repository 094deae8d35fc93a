#ifndef MOMROB_SERIALIZE_HPP_
#define MOMROB_SERIALIZE_HPP_

#include <filesystem>
#include <string>
#include <variant>

#include "momrob/model.hpp"
#include "momrob/optim.hpp"

namespace momrob {

// {"type":"linear","u":[...],"b":...}
std::string to_json(const LinearModel& m);
// {"type":"kernel","alpha":[...],"kernel":{"type":"rbf","gamma":...},
//  "blocks":[[...]],"active_block":k|null,"support":[[...]]}
std::string to_json(const KernelModel& m);

using AnyModel = std::variant<LinearModel, KernelModel>;
AnyModel model_from_json(const std::string& text);

void save_model(const AnyModel& m, const std::filesystem::path& path);
AnyModel load_model(const std::filesystem::path& path);

std::string to_json(const MomGdConfig& cfg);
MomGdConfig mom_config_from_json(const std::string& text);

/// One JSON object per line:
/// {"t":..,"partition_seed":..,"k_med":..,"members":[..],"objective":..}
/// The reader restores n as 0 and k as 0; callers supply n.
void write_trace_jsonl(const TrainTrace& trace, const std::filesystem::path& path);
TrainTrace read_trace_jsonl(const std::filesystem::path& path);

}  // namespace momrob

#endif  // MOMROB_SERIALIZE_HPP_
