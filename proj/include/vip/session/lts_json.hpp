#pragma once

#include "vip/session/lts.hpp"

#include <json.hpp>

#include <filesystem>

namespace vip::session {

/// LTS interchange document:
/// `{states:[...], initial:"s0", terminals:[...],
///   transitions:[{from,to,action:"!|?|+|&",message,kind,width}]}`.
/// Arrays additionally carry `element` and `length`.
nlohmann::json to_json(const SessionLts& session);
SessionLts lts_from_json(const nlohmann::json& document);

nlohmann::json to_json(const Label& label);
Label label_from_json(const nlohmann::json& document);

SessionLts load_lts(const std::filesystem::path& path);

}  // namespace vip::session
