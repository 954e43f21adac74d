#pragma once

#include <json.hpp>

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vip::layout {

class TemplateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Pre-characterized physical realization of an IP.
struct TemplateVariant {
    std::string ip;
    std::string id;
    double freq_mhz = 0.0;
    double width_um = 0.0;
    double height_um = 0.0;
    double leakage_mw = 0.0;
    std::uint32_t cycles_per_op = 1;
    /// One of N, E, S, W.
    char pin_edge = 'N';

    double area() const { return width_um * height_um; }
    double aspect_ratio() const { return width_um / height_um; }
    bool operator==(const TemplateVariant&) const = default;
};

class TemplateLibrary {
public:
    /// Throws TemplateError for a duplicate id within an IP, a non-positive
    /// dimension or frequency, cycles_per_op < 1, or a bad pin edge.
    void add(TemplateVariant variant);

    /// Variants of `ip` by frequency descending, then area ascending, then id.
    std::vector<TemplateVariant> query(std::string_view ip) const;
    const TemplateVariant* find(std::string_view ip, std::string_view id) const;
    std::vector<std::string> ips() const;
    std::size_t size() const;
    bool empty() const { return size() == 0; }

private:
    std::map<std::string, std::vector<TemplateVariant>, std::less<>> by_ip_;
};

/// Manifest: one `{ip, variants:[{id, freq_mhz, width_um, height_um,
/// leakage_mw, cycles_per_op, pin_edge}]}` object, or an array of them.
TemplateLibrary load_templates(const nlohmann::json& manifest);
TemplateLibrary load_templates_file(const std::filesystem::path& path);
nlohmann::json to_json(const TemplateVariant& variant);
/// Array-of-IPs manifest form.
nlohmann::json to_json(const TemplateLibrary& library);

}  // namespace vip::layout
