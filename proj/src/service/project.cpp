#include "vip/service/project.hpp"

#include <fmt/format.h>
#include <openssl/evp.h>

#include <fstream>
#include <sstream>

namespace vip::service {

using nlohmann::json;

std::filesystem::path Project::resolve(const std::string& path) const {
    std::filesystem::path p(path);
    if (p.is_absolute() || base_dir.empty()) return p;
    return base_dir / p;
}

std::string Project::program_text() const {
    if (source_file.empty()) return source;
    return read_file(resolve(source_file));
}

bool Project::operator==(const Project& o) const {
    return name == o.name && source == o.source && source_file == o.source_file &&
           bindings == o.bindings && hashes == o.hashes && control_filter == o.control_filter &&
           topology == o.topology && templates == o.templates && selections == o.selections &&
           box_width == o.box_width && box_height == o.box_height && spacing == o.spacing &&
           verdict_cache == o.verdict_cache && history == o.history;
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw ProjectError("SHA-256 failed");
    }
    std::string out;
    for (unsigned int i = 0; i < len; ++i) out += fmt::format("{:02x}", digest[i]);
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ProjectError(fmt::format("cannot read '{}'", path.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json to_json(const Project& p) {
    json selections = json::object();
    for (const auto& [block, s] : p.selections) selections[block] = {{"ip", s.ip}, {"variant", s.variant}};
    json history = json::array();
    for (const auto& h : p.history) history.push_back({{"block", h.block}, {"from", h.from}, {"to", h.to}});
    const auto& t = p.topology;
    json doc = {
        {"schema", project_schema},
        {"name", p.name},
        {"bindings", p.bindings},
        {"hashes", p.hashes},
        {"control_filter", p.control_filter},
        {"topology",
         {{"kind", std::string(net::to_string(t.kind))},
          {"width_bits", t.width_bits},
          {"arbitration_cycles", t.arbitration_cycles},
          {"c_node", t.c_node},
          {"c_bus", t.c_bus},
          {"c_link", t.c_link},
          {"leakage_per_area", t.leakage_per_area},
          {"frequency_mhz", t.frequency_mhz}}},
        {"templates", p.templates},
        {"selections", selections},
        {"box", {{"width", p.box_width}, {"height", p.box_height}}},
        {"spacing", p.spacing},
        {"verdict_cache", p.verdict_cache},
        {"history", history},
    };
    if (!p.source_file.empty()) doc["source_file"] = p.source_file;
    if (!p.source.empty() || p.source_file.empty()) doc["source"] = p.source;
    return doc;
}

namespace {

net::TopologyModel topology_from_json(const json& doc) {
    net::TopologyModel t;
    if (doc.contains("kind")) {
        auto kind = net::parse_topology_kind(doc.at("kind").get<std::string>());
        if (!kind) throw ProjectError(fmt::format("unknown topology kind '{}'", doc.at("kind").get<std::string>()));
        t.kind = *kind;
    }
    t.width_bits = doc.value("width_bits", t.width_bits);
    t.arbitration_cycles = doc.value("arbitration_cycles", t.arbitration_cycles);
    t.c_node = doc.value("c_node", t.c_node);
    t.c_bus = doc.value("c_bus", t.c_bus);
    t.c_link = doc.value("c_link", t.c_link);
    t.leakage_per_area = doc.value("leakage_per_area", t.leakage_per_area);
    t.frequency_mhz = doc.value("frequency_mhz", t.frequency_mhz);
    return t;
}

}  // namespace

Project project_from_json(const json& doc, std::filesystem::path base_dir) {
    if (!doc.is_object()) throw ProjectError("corrupt project file: not a JSON object");
    if (!doc.contains("schema")) throw ProjectError("schema version missing");
    if (!doc.at("schema").is_number_integer() || doc.at("schema").get<int>() != project_schema) {
        throw ProjectError(fmt::format("schema version {} is not supported (expected {})",
                                       doc.at("schema").dump(), project_schema));
    }
    Project p;
    p.base_dir = std::move(base_dir);
    try {
        p.name = doc.value("name", std::string());
        p.source = doc.value("source", std::string());
        p.source_file = doc.value("source_file", std::string());
        p.bindings = doc.value("bindings", std::map<std::string, std::string>{});
        p.hashes = doc.value("hashes", std::map<std::string, std::string>{});
        p.control_filter = doc.value("control_filter", std::set<std::string>{});
        if (doc.contains("topology")) p.topology = topology_from_json(doc.at("topology"));
        p.templates = doc.value("templates", std::string());
        if (doc.contains("selections")) {
            for (const auto& [block, s] : doc.at("selections").items()) {
                p.selections[block] = {s.at("ip").get<std::string>(), s.at("variant").get<std::string>()};
            }
        }
        if (doc.contains("box")) {
            p.box_width = doc.at("box").at("width").get<double>();
            p.box_height = doc.at("box").at("height").get<double>();
        }
        p.spacing = doc.value("spacing", p.spacing);
        if (doc.contains("verdict_cache")) {
            for (const auto& [key, v] : doc.at("verdict_cache").items()) p.verdict_cache[key] = v;
        }
        if (doc.contains("history")) {
            for (const auto& h : doc.at("history")) {
                p.history.push_back({h.at("block").get<std::string>(), h.at("from").get<std::string>(),
                                     h.at("to").get<std::string>()});
            }
        }
    } catch (const json::exception& e) {
        throw ProjectError(fmt::format("malformed project: {}", e.what()));
    }
    return p;
}

namespace {

std::vector<std::string> referenced_files(const Project& p) {
    std::vector<std::string> files;
    if (!p.source_file.empty()) files.push_back(p.source_file);
    for (const auto& [object, path] : p.bindings) files.push_back(path);
    if (!p.templates.empty()) files.push_back(p.templates);
    return files;
}

}  // namespace

void refresh_hashes(Project& p) {
    p.hashes.clear();
    for (const auto& f : referenced_files(p)) {
        std::error_code ec;
        if (std::filesystem::is_regular_file(p.resolve(f), ec)) p.hashes[f] = sha256_hex(read_file(p.resolve(f)));
    }
}

std::vector<std::string> stale_files(const Project& p) {
    std::vector<std::string> out;
    for (const auto& [f, hash] : p.hashes) {
        std::error_code ec;
        if (!std::filesystem::is_regular_file(p.resolve(f), ec) || sha256_hex(read_file(p.resolve(f))) != hash) {
            out.push_back(f);
        }
    }
    return out;
}

std::string serialize(const Project& p) { return to_json(p).dump(2) + "\n"; }

void save_project(const Project& p, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ProjectError(fmt::format("cannot write '{}'", path.string()));
    out << serialize(p);
    if (!out) throw ProjectError(fmt::format("write to '{}' failed", path.string()));
}

Project load_project(const std::filesystem::path& path) {
    std::string text = read_file(path);
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
        throw ProjectError(fmt::format("corrupt project file '{}': empty", path.string()));
    }
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ProjectError(fmt::format("corrupt project file '{}': {}", path.string(), e.what()));
    }
    return project_from_json(doc, path.parent_path());
}

}  // namespace vip::service
