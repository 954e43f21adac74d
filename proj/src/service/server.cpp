#include "vip/service/server.hpp"

#include "vip/frontend/ast.hpp"
#include "vip/hw/fsm.hpp"
#include "vip/layout/svg.hpp"

#include <fmt/format.h>
#include <httplib.h>

#include <algorithm>
#include <mutex>
#include <thread>

namespace vip::service {

using nlohmann::json;

struct Service::Entry {
    mutable std::mutex mu;
    std::string id;
    Project project;
    std::optional<std::filesystem::path> save_to;
    std::uint64_t revision = 0;
    layout::TemplateLibrary library;
    std::optional<PipelineReport> report;
    std::vector<json> audit;
};

namespace {

Response json_response(int status, const json& body) { return {status, body.dump(), "application/json"}; }

Response error(int status, std::string_view message) { return json_response(status, {{"error", message}}); }

layout::TemplateLibrary library_of(const Project& p) {
    if (p.templates.empty()) return {};
    return layout::load_templates_file(p.resolve(p.templates));
}

/// Input problems are the caller's fault (422); anything else is ours.
template <typename F>
Response guarded(F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        return error(400, fmt::format("bad request body: {}", e.what()));
    } catch (const frontend::FrontendError& e) {
        return error(422, e.what());
    } catch (const hw::FsmError& e) {
        return error(422, e.what());
    } catch (const layout::TemplateError& e) {
        return error(422, e.what());
    } catch (const ProjectError& e) {
        return error(422, e.what());
    } catch (const std::invalid_argument& e) {
        return error(422, e.what());
    } catch (const std::exception& e) {
        return error(500, e.what());
    }
}

json witnesses_of(const PipelineReport& r) {
    json out = json::array();
    for (const auto& c : r.checks) {
        if (c.verdict.equivalent()) continue;
        json w = json::array();
        for (const auto& l : c.verdict.witness) w.push_back(session::to_string(l));
        out.push_back({{"check", c.key()}, {"verdict", std::string(equiv::to_string(c.verdict.outcome))}, {"witness", w}});
    }
    return out;
}

}  // namespace

Service::Service() = default;
Service::~Service() = default;

void Service::add_project(const std::string& id, Project project, std::optional<std::filesystem::path> save_to) {
    auto e = std::make_unique<Entry>();
    e->id = id;
    e->library = library_of(project);
    e->project = std::move(project);
    e->save_to = std::move(save_to);
    std::unique_lock lock(map_mutex_);
    projects_[id] = std::move(e);
}

Service::Entry* Service::find(const std::string& id) const {
    std::shared_lock lock(map_mutex_);
    auto it = projects_.find(id);
    return it == projects_.end() ? nullptr : it->second.get();
}

Response Service::get_project(const std::string& id) const {
    Entry* e = find(id);
    if (!e) return error(404, fmt::format("no project '{}'", id));
    return guarded([&] {
        std::lock_guard lock(e->mu);
        json doc = {{"id", id},
                    {"revision", e->revision},
                    {"project", to_json(e->project)},
                    {"stale_files", stale_files(e->project)},
                    {"status", e->report ? json(std::string(to_string(e->report->status))) : json(nullptr)}};
        if (e->report) {
            json verdicts = json::array();
            for (const auto& c : e->report->checks) {
                verdicts.push_back({{"check", c.key()}, {"verdict", equiv::to_json(c.verdict)}});
            }
            doc["verdicts"] = verdicts;
            if (e->report->floorplan) doc["floorplan"] = layout::to_json(*e->report->floorplan);
        }
        return json_response(200, doc);
    });
}

namespace {

void commit(Service::Entry& e, json op) {
    ++e.revision;
    op["revision"] = e.revision;
    e.audit.push_back(std::move(op));
    if (e.save_to) save_project(e.project, *e.save_to);
}

/// Runs the pipeline once if no report exists yet; not a mutation.
const PipelineReport& ensure_report(Service::Entry& e) {
    if (!e.report) e.report = run_pipeline(e.project);
    return *e.report;
}

Response violation(const PipelineReport& r) {
    return json_response(409, {{"error", fmt::format("no floorplan: {}", to_string(r.status))},
                               {"status", std::string(to_string(r.status))},
                               {"witnesses", witnesses_of(r)}});
}

}  // namespace

Response Service::check(const std::string& id) {
    Entry* e = find(id);
    if (!e) return error(404, fmt::format("no project '{}'", id));
    return guarded([&] {
        std::lock_guard lock(e->mu);
        e->library = library_of(e->project);
        PipelineReport report = run_pipeline(e->project);
        cache_verdicts(e->project, report);
        e->report = std::move(report);
        commit(*e, {{"op", "check"}, {"status", std::string(to_string(e->report->status))}});
        return json_response(200, {{"revision", e->revision}, {"report", to_json(*e->report)}});
    });
}

Response Service::opt_select(const std::string& id, const std::string& body) {
    Entry* e = find(id);
    if (!e) return error(404, fmt::format("no project '{}'", id));
    return guarded([&] {
        json req = json::parse(body);
        const std::string target = req.at("ip").get<std::string>();
        const std::string variant = req.at("variant").get<std::string>();
        std::lock_guard lock(e->mu);
        const PipelineReport& report = ensure_report(*e);
        if (report.status != PipelineStatus::Ok) return violation(report);

        Project& p = e->project;
        layout::PlanState state = layout::make_plan(e->library, p.selections, p.box_width, p.box_height, p.spacing);
        state.history = p.history;
        layout::OptResult result = layout::opt_select(e->library, state, target, variant);
        p.selections = result.state.selections;
        p.history = result.state.history;
        e->report->floorplan = result.state.plan;
        commit(*e, {{"op", "opt_select"}, {"ip", target}, {"variant", variant}});
        return json_response(200, {{"revision", e->revision},
                                   {"floorplan", layout::to_json(result.state.plan)},
                                   {"deltas", layout::to_json(result.deltas)},
                                   {"fit", result.state.plan.fit}});
    });
}

Response Service::floorplan_svg(const std::string& id) {
    Entry* e = find(id);
    if (!e) return error(404, fmt::format("no project '{}'", id));
    return guarded([&] {
        std::lock_guard lock(e->mu);
        const PipelineReport& report = ensure_report(*e);
        if (report.status != PipelineStatus::Ok || !report.floorplan) return violation(report);
        return Response{200, layout::render_svg(*report.floorplan), "image/svg+xml"};
    });
}

Response Service::templates(const std::string& id) const {
    Entry* e = find(id);
    if (!e) return error(404, fmt::format("no project '{}'", id));
    return guarded([&] {
        std::lock_guard lock(e->mu);
        return json_response(200, {{"revision", e->revision}, {"templates", layout::to_json(e->library)}});
    });
}

Response Service::topology(const std::string& id, const std::string& body) {
    Entry* e = find(id);
    if (!e) return error(404, fmt::format("no project '{}'", id));
    return guarded([&] {
        json req = json::parse(body);
        net::TopologyModel t;
        {
            std::lock_guard lock(e->mu);
            t = e->project.topology;
        }
        auto kind = net::parse_topology_kind(req.at("kind").get<std::string>());
        if (!kind) return error(422, fmt::format("unknown topology kind '{}'", req.at("kind").get<std::string>()));
        t.kind = *kind;
        if (req.contains("params")) {
            const json& params = req.at("params");
            t.width_bits = params.value("width_bits", t.width_bits);
            t.arbitration_cycles = params.value("arbitration_cycles", t.arbitration_cycles);
            t.c_node = params.value("c_node", t.c_node);
            t.c_bus = params.value("c_bus", t.c_bus);
            t.c_link = params.value("c_link", t.c_link);
            t.leakage_per_area = params.value("leakage_per_area", t.leakage_per_area);
            t.frequency_mhz = params.value("frequency_mhz", t.frequency_mhz);
        }
        net::TopologyModel probe = t;
        probe.nodes = std::max<std::uint32_t>(probe.nodes, 2);
        probe.validate();

        std::lock_guard lock(e->mu);
        e->project.topology.kind = t.kind;
        e->project.topology.width_bits = t.width_bits;
        e->project.topology.arbitration_cycles = t.arbitration_cycles;
        e->project.topology.c_node = t.c_node;
        e->project.topology.c_bus = t.c_bus;
        e->project.topology.c_link = t.c_link;
        e->project.topology.leakage_per_area = t.leakage_per_area;
        e->project.topology.frequency_mhz = t.frequency_mhz;
        PipelineReport report = run_pipeline(e->project);
        // Keep the floorplan the user has been refining.
        if (e->report && e->report->floorplan && report.floorplan) report.floorplan = e->report->floorplan;
        e->report = std::move(report);
        commit(*e, {{"op", "topology"}, {"kind", std::string(net::to_string(t.kind))}});
        return json_response(200, {{"revision", e->revision},
                                   {"status", std::string(to_string(e->report->status))},
                                   {"interconnect", e->report->interconnect ? net::to_json(*e->report->interconnect)
                                                                            : json(nullptr)}});
    });
}

Response Service::audit(const std::string& id) const {
    Entry* e = find(id);
    if (!e) return error(404, fmt::format("no project '{}'", id));
    std::lock_guard lock(e->mu);
    return json_response(200, {{"revision", e->revision}, {"audit", e->audit}});
}

struct HttpServer::Impl {
    Service& service;
    httplib::Server http;
    std::thread thread;

    explicit Impl(Service& s) : service(s) {
        auto reply = [](httplib::Response& res, const Response& r) {
            res.status = r.status;
            res.set_content(r.body, r.content_type);
        };
        const std::string base = R"(/api/projects/([^/]+))";
        http.Get(base, [this, reply](const httplib::Request& req, httplib::Response& res) {
            reply(res, service.get_project(req.matches[1]));
        });
        http.Post(base + "/check", [this, reply](const httplib::Request& req, httplib::Response& res) {
            reply(res, service.check(req.matches[1]));
        });
        http.Post(base + "/opt_select", [this, reply](const httplib::Request& req, httplib::Response& res) {
            reply(res, service.opt_select(req.matches[1], req.body));
        });
        http.Get(base + "/floorplan\\.svg", [this, reply](const httplib::Request& req, httplib::Response& res) {
            reply(res, service.floorplan_svg(req.matches[1]));
        });
        http.Get(base + "/templates", [this, reply](const httplib::Request& req, httplib::Response& res) {
            reply(res, service.templates(req.matches[1]));
        });
        http.Post(base + "/topology", [this, reply](const httplib::Request& req, httplib::Response& res) {
            reply(res, service.topology(req.matches[1], req.body));
        });
        http.Get(base + "/audit", [this, reply](const httplib::Request& req, httplib::Response& res) {
            reply(res, service.audit(req.matches[1]));
        });
    }
};

HttpServer::HttpServer(Service& service) : impl_(std::make_unique<Impl>(service)) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::start(const std::string& host, int port) {
    int bound = port;
    if (port == 0) {
        bound = impl_->http.bind_to_any_port(host);
        if (bound < 0) throw std::runtime_error(fmt::format("cannot bind {}", host));
    } else if (!impl_->http.bind_to_port(host, port)) {
        throw std::runtime_error(fmt::format("cannot bind {}:{}", host, port));
    }
    impl_->thread = std::thread([this] { impl_->http.listen_after_bind(); });
    impl_->http.wait_until_ready();
    return bound;
}

void HttpServer::run(const std::string& host, int port) {
    if (!impl_->http.listen(host, port)) throw std::runtime_error(fmt::format("cannot bind {}:{}", host, port));
}

void HttpServer::stop() {
    if (!impl_) return;
    impl_->http.stop();
    if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace vip::service
