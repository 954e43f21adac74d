#pragma once

#include "vip/hw/fsm.hpp"

#include <json.hpp>

#include <filesystem>
#include <string_view>

namespace vip::hw {

/// FSM interchange document:
/// `{ip, reset, ports:[{name, dir:"in|out", width}],
///   states:[{id, assert:[...], guard_valid:[...], branch:"none|internal|input-data",
///            port?, message?, arms:[{cond_label, next}], next?}]}`.
/// `port` names the input whose data drives an input-data branch.
/// `message` overrides the default message name (the port name).
HwFsm parse_fsm(std::string_view document);
HwFsm fsm_from_json(const nlohmann::json& document);
nlohmann::json to_json(const HwFsm& fsm);

/// Reads a `.json` interchange document or a `.fsm` toy HDL file.
HwFsm load_fsm(const std::filesystem::path& path);

}  // namespace vip::hw
