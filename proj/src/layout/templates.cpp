#include "vip/layout/templates.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <tuple>

namespace vip::layout {

void TemplateLibrary::add(TemplateVariant v) {
    std::string where = fmt::format("variant '{}/{}'", v.ip, v.id);
    if (v.ip.empty() || v.id.empty()) throw TemplateError("variant needs an ip and an id");
    if (!(v.width_um > 0) || !(v.height_um > 0)) {
        throw TemplateError(fmt::format("{} has a non-positive dimension", where));
    }
    if (!(v.freq_mhz > 0)) throw TemplateError(fmt::format("{} has a non-positive frequency", where));
    if (v.leakage_mw < 0) throw TemplateError(fmt::format("{} has negative leakage", where));
    if (v.cycles_per_op < 1) throw TemplateError(fmt::format("{} has cycles_per_op < 1", where));
    if (std::string_view("NESW").find(v.pin_edge) == std::string_view::npos) {
        throw TemplateError(fmt::format("{} has pin edge '{}'", where, v.pin_edge));
    }
    auto& list = by_ip_[v.ip];
    for (const auto& existing : list) {
        if (existing.id == v.id) throw TemplateError(fmt::format("duplicate {}", where));
    }
    list.push_back(std::move(v));
}

std::vector<TemplateVariant> TemplateLibrary::query(std::string_view ip) const {
    auto it = by_ip_.find(ip);
    if (it == by_ip_.end()) return {};
    std::vector<TemplateVariant> out = it->second;
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return std::make_tuple(-a.freq_mhz, a.area(), a.id) < std::make_tuple(-b.freq_mhz, b.area(), b.id);
    });
    return out;
}

const TemplateVariant* TemplateLibrary::find(std::string_view ip, std::string_view id) const {
    auto it = by_ip_.find(ip);
    if (it == by_ip_.end()) return nullptr;
    for (const auto& v : it->second) {
        if (v.id == id) return &v;
    }
    return nullptr;
}

std::vector<std::string> TemplateLibrary::ips() const {
    std::vector<std::string> out;
    for (const auto& [ip, list] : by_ip_) out.push_back(ip);
    return out;
}

std::size_t TemplateLibrary::size() const {
    std::size_t n = 0;
    for (const auto& [ip, list] : by_ip_) n += list.size();
    return n;
}

namespace {

void load_ip(TemplateLibrary& lib, const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("ip") || !doc.at("ip").is_string()) {
        throw TemplateError("manifest entry needs a string 'ip'");
    }
    std::string ip = doc.at("ip").get<std::string>();
    if (!doc.contains("variants")) return;
    if (!doc.at("variants").is_array()) throw TemplateError(fmt::format("'{}'.variants must be an array", ip));
    for (const auto& v : doc.at("variants")) {
        try {
            TemplateVariant t;
            t.ip = ip;
            t.id = v.at("id").get<std::string>();
            t.freq_mhz = v.at("freq_mhz").get<double>();
            t.width_um = v.at("width_um").get<double>();
            t.height_um = v.at("height_um").get<double>();
            t.leakage_mw = v.value("leakage_mw", 0.0);
            t.cycles_per_op = v.value("cycles_per_op", 1u);
            std::string edge = v.value("pin_edge", std::string("N"));
            t.pin_edge = edge.size() == 1 ? edge.front() : '?';
            lib.add(std::move(t));
        } catch (const nlohmann::json::exception& e) {
            throw TemplateError(fmt::format("bad variant in '{}': {}", ip, e.what()));
        }
    }
}

}  // namespace

TemplateLibrary load_templates(const nlohmann::json& manifest) {
    TemplateLibrary lib;
    if (manifest.is_null() || (manifest.is_object() && manifest.empty())) return lib;
    if (manifest.is_array()) {
        for (const auto& entry : manifest) load_ip(lib, entry);
    } else {
        load_ip(lib, manifest);
    }
    return lib;
}

TemplateLibrary load_templates_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw TemplateError(fmt::format("cannot read '{}'", path.string()));
    try {
        return load_templates(nlohmann::json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
        throw TemplateError(fmt::format("'{}': {}", path.string(), e.what()));
    }
}

nlohmann::json to_json(const TemplateVariant& v) {
    return {{"ip", v.ip},
            {"id", v.id},
            {"freq_mhz", v.freq_mhz},
            {"width_um", v.width_um},
            {"height_um", v.height_um},
            {"area_um2", v.area()},
            {"aspect_ratio", v.aspect_ratio()},
            {"leakage_mw", v.leakage_mw},
            {"cycles_per_op", v.cycles_per_op},
            {"pin_edge", std::string(1, v.pin_edge)}};
}

nlohmann::json to_json(const TemplateLibrary& lib) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& ip : lib.ips()) {
        nlohmann::json variants = nlohmann::json::array();
        for (const auto& v : lib.query(ip)) variants.push_back(to_json(v));
        out.push_back({{"ip", ip}, {"variants", variants}});
    }
    return out;
}

}  // namespace vip::layout
