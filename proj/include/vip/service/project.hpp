#pragma once

#include "vip/layout/floorplan.hpp"
#include "vip/net/topology.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace vip::service {

class ProjectError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int project_schema = 1;

/// Everything the pipeline needs, as one schema-versioned JSON document.
/// Paths are relative to `base_dir` (the directory of the project file).
struct Project {
    std::string name;
    /// Program text, or empty when `source_file` names it.
    std::string source;
    std::string source_file;
    /// Object name -> FSM document (.json interchange or .fsm toy HDL).
    std::map<std::string, std::string> bindings;
    /// File path -> SHA-256 (hex) recorded at save time.
    std::map<std::string, std::string> hashes;
    std::set<std::string> control_filter;
    net::TopologyModel topology;
    std::string templates;
    layout::Selections selections;
    double box_width = 1000.0;
    double box_height = 1000.0;
    double spacing = 5.0;
    /// Cached verdicts keyed by check id; each entry records the hashes it
    /// was computed from.
    std::map<std::string, nlohmann::json> verdict_cache;
    std::vector<layout::HistoryEntry> history;

    std::filesystem::path base_dir;

    std::filesystem::path resolve(const std::string& path) const;
    /// Source text, reading `source_file` when set.
    std::string program_text() const;

    bool operator==(const Project& other) const;
};

std::string sha256_hex(std::string_view bytes);
std::string read_file(const std::filesystem::path& path);

nlohmann::json to_json(const Project& project);
/// Throws ProjectError for a missing or mismatched schema or a malformed field.
Project project_from_json(const nlohmann::json& document, std::filesystem::path base_dir = {});

/// Refreshes `hashes` for every referenced file that exists.
void refresh_hashes(Project& project);
/// Files whose current content no longer matches the recorded hash.
std::vector<std::string> stale_files(const Project& project);

/// Sorted keys, two-space indent, trailing newline: identical projects give
/// identical bytes.
std::string serialize(const Project& project);
void save_project(const Project& project, const std::filesystem::path& path);
/// Throws ProjectError("corrupt project file ...") for an empty or
/// unparsable file and ProjectError("schema version ...") for a mismatch.
Project load_project(const std::filesystem::path& path);

}  // namespace vip::service
