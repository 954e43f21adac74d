#pragma once

#include "vip/service/pipeline.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>

namespace vip::service {

struct Response {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";

    nlohmann::json json() const { return nlohmann::json::parse(body); }
};

/// Authoritative project states keyed by id. Mutations on one project are
/// serialized by its lock and each bumps its revision by exactly one;
/// reads take the same lock briefly, so they see whole revisions.
class Service {
public:
    Service();
    ~Service();

    /// When `save_to` is set, the project is written back after every mutation.
    void add_project(const std::string& id, Project project,
                     std::optional<std::filesystem::path> save_to = std::nullopt);

    Response get_project(const std::string& id) const;
    Response check(const std::string& id);
    /// Body `{ip, variant}`; `ip` may also name a block.
    Response opt_select(const std::string& id, const std::string& body);
    Response floorplan_svg(const std::string& id);
    Response templates(const std::string& id) const;
    /// Body `{kind, params:{width_bits, arbitration_cycles, c_node, c_bus,
    /// c_link, leakage_per_area, frequency_mhz}}`.
    Response topology(const std::string& id, const std::string& body);
    /// Mutation log: `[{revision, op, ...}]` in revision order.
    Response audit(const std::string& id) const;

    struct Entry;

private:
    Entry* find(const std::string& id) const;

    mutable std::shared_mutex map_mutex_;
    std::map<std::string, std::unique_ptr<Entry>> projects_;
};

/// HTTP front end for a Service:
///   GET  /api/projects/{id}
///   POST /api/projects/{id}/check
///   POST /api/projects/{id}/opt_select
///   GET  /api/projects/{id}/floorplan.svg
///   GET  /api/projects/{id}/templates
///   POST /api/projects/{id}/topology
///   GET  /api/projects/{id}/audit
class HttpServer {
public:
    explicit HttpServer(Service& service);
    ~HttpServer();

    /// Binds (port 0 picks a free port), starts serving on a background
    /// thread and returns the bound port. Throws std::runtime_error on bind
    /// failure.
    int start(const std::string& host, int port);
    /// Binds and serves on the calling thread until stop().
    void run(const std::string& host, int port);
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace vip::service
