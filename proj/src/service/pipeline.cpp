#include "vip/service/pipeline.hpp"

#include "vip/equiv/binding.hpp"
#include "vip/frontend/parser.hpp"
#include "vip/frontend/validate.hpp"
#include "vip/hw/candidates.hpp"
#include "vip/hw/classify.hpp"
#include "vip/hw/fsm_json.hpp"
#include "vip/layout/templates.hpp"
#include "vip/session/notation.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>

namespace vip::service {

using nlohmann::json;

std::string_view to_string(PipelineStatus status) {
    switch (status) {
        case PipelineStatus::Ok: return "ok";
        case PipelineStatus::ConstraintViolation: return "constraint-violation";
        case PipelineStatus::ProtocolViolation: return "protocol-violation";
    }
    return "?";
}

std::string PairCheck::key() const { return fmt::format("{}->{}@{}", caller, callee, object); }

bool PipelineReport::all_equivalent() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.verdict.equivalent(); });
}

net::Workload program_workload(const frontend::ObjectGraph& graph, const frontend::WidthPolicy& policy,
                               const std::map<std::string, std::uint64_t>& compute) {
    std::map<std::string, std::uint32_t> node;
    net::Workload w;
    w.name = "program";
    for (const auto& o : graph.objects) {
        node.emplace(o.name, static_cast<std::uint32_t>(w.node_names.size()));
        w.node_names.push_back(o.name);
    }
    struct Event {
        std::size_t at;
        net::Transaction t;
    };
    std::vector<Event> events;
    for (const auto& e : graph.edges) {
        auto cycles = compute.find(e.callee);
        std::uint64_t req = frontend::annotate_payload(e.request_payload(), policy).width;
        std::uint64_t resp = frontend::annotate_payload(e.result, policy).width;
        events.push_back({e.request_event,
                          {node.at(e.caller), node.at(e.callee), req,
                           cycles == compute.end() ? 0 : cycles->second, "program", {}}});
        events.push_back({e.response_event, {node.at(e.callee), node.at(e.caller), resp, 0, "program", {}}});
    }
    std::sort(events.begin(), events.end(), [](const auto& a, const auto& b) { return a.at < b.at; });
    for (auto& ev : events) w.transactions.push_back(std::move(ev.t));
    return w;
}

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

std::set<std::string> messages_of(const session::SessionLts& s) {
    std::set<std::string> out;
    for (const auto& l : s.actions()) out.insert(l.message);
    return out;
}

frontend::WidthPolicy policy_for(const frontend::ObjectGraph& graph) {
    frontend::WidthPolicy policy;
    policy.string_characters = graph.longest_string_literal;
    return policy;
}

}  // namespace

PipelineReport run_pipeline(const Project& project, Execution execution) {
    auto t0 = std::chrono::steady_clock::now();
    PipelineReport report;

    const std::string text = project.program_text();
    frontend::Program program = frontend::parse_ast(text);
    frontend::ObjectGraph graph = frontend::build_object_graph(program);
    report.violations = frontend::validate_constraints(graph, program);
    if (!report.violations.empty()) {
        report.status = PipelineStatus::ConstraintViolation;
        report.timing_ms = elapsed_ms(t0);
        return report;
    }

    const frontend::WidthPolicy policy = policy_for(graph);
    report.sessions = frontend::derive_sessions(graph, policy, frontend::Perspective::Caller);
    std::vector<frontend::PairSession> callee_view =
        frontend::derive_sessions(graph, policy, frontend::Perspective::Callee);

    std::map<std::string, std::size_t> edges_of;
    for (const auto& e : graph.edges) {
        ++edges_of[e.caller];
        if (e.callee != e.caller) ++edges_of[e.callee];
    }
    for (const auto& [object, n] : edges_of) {
        if (!project.bindings.count(object)) {
            throw ProjectError(fmt::format("object '{}' takes part in {} call(s) but has no IP binding", object, n));
        }
    }

    std::map<std::string, std::vector<hw::CandidateProtocol>> candidates;
    for (const auto& [object, n] : edges_of) {
        const std::string& path = project.bindings.at(object);
        try {
            hw::LabeledFsm fsm = hw::classify_actions(hw::load_fsm(project.resolve(path)));
            candidates[object] = hw::extract_candidates(fsm, n);
        } catch (const hw::FsmError& e) {
            throw hw::FsmError(fmt::format("binding '{}' ({}): {}", object, path, e.what()));
        }
    }

    for (std::size_t i = 0; i < report.sessions.size(); ++i) {
        const auto& pair = report.sessions[i];
        for (const std::string& object : {pair.caller, pair.callee}) {
            if (object == pair.callee && pair.callee == pair.caller) continue;
            PairCheck check;
            check.caller = pair.caller;
            check.callee = pair.callee;
            check.object = object;
            check.binding = project.bindings.at(object);
            check.software = object == pair.caller ? pair.session : callee_view[i].session;

            std::set<std::string> own = messages_of(check.software);
            std::set<std::string> prune = project.control_filter;
            for (const auto& other : report.sessions) {
                if (&other == &pair || (other.caller != object && other.callee != object)) continue;
                for (const auto& m : messages_of(other.session)) {
                    if (!own.count(m)) prune.insert(m);
                }
            }
            const auto& cands = candidates.at(object);
            check.candidates = cands.size();
            check.verdict = equiv::check_binding(check.software, cands, prune, execution);
            check.verdict.filtered = project.control_filter;
            report.checks.push_back(std::move(check));
        }
    }

    if (!report.all_equivalent()) {
        report.status = PipelineStatus::ProtocolViolation;
        report.timing_ms = elapsed_ms(t0);
        return report;
    }

    layout::TemplateLibrary library;
    if (!project.templates.empty()) library = layout::load_templates_file(project.resolve(project.templates));

    std::map<std::string, std::uint64_t> compute;
    for (const auto& [block, sel] : project.selections) {
        if (const auto* v = library.find(sel.ip, sel.variant)) compute[block] = v->cycles_per_op;
    }
    net::TopologyModel topology = project.topology;
    topology.nodes = std::max<std::uint32_t>(2, static_cast<std::uint32_t>(graph.objects.size()));
    report.interconnect = net::simulate(topology, program_workload(graph, policy, compute));
    report.floorplan = layout::compose(library, project.selections, project.box_width, project.box_height,
                                       project.spacing);
    report.timing_ms = elapsed_ms(t0);
    return report;
}

void cache_verdicts(Project& project, const PipelineReport& report) {
    std::string source_hash = sha256_hex(project.program_text());
    for (const auto& c : report.checks) {
        std::string fsm_hash;
        std::error_code ec;
        auto path = project.resolve(c.binding);
        if (std::filesystem::is_regular_file(path, ec)) fsm_hash = sha256_hex(read_file(path));
        json verdict = equiv::to_json(c.verdict);
        verdict.erase("timing_ms");
        project.verdict_cache[c.key()] = {{"source_sha256", source_hash},
                                          {"fsm_sha256", fsm_hash},
                                          {"control_filter", project.control_filter},
                                          {"verdict", verdict}};
    }
}

json to_json(const PairCheck& c) {
    return {{"key", c.key()},
            {"caller", c.caller},
            {"callee", c.callee},
            {"object", c.object},
            {"binding", c.binding},
            {"software", session::to_notation(c.software)},
            {"candidates", c.candidates},
            {"verdict", equiv::to_json(c.verdict)}};
}

json to_json(const PipelineReport& r) {
    json violations = json::array();
    for (const auto& v : r.violations) {
        violations.push_back({{"kind", std::string(frontend::to_string(v.kind))},
                              {"line", v.location.line},
                              {"column", v.location.column},
                              {"message", v.message}});
    }
    json sessions = json::array();
    for (const auto& s : r.sessions) {
        sessions.push_back({{"caller", s.caller}, {"callee", s.callee}, {"session", session::to_notation(s.session)}});
    }
    json checks = json::array();
    json witnesses = json::array();
    for (const auto& c : r.checks) {
        checks.push_back(to_json(c));
        if (!c.verdict.equivalent()) {
            json w = json::array();
            for (const auto& l : c.verdict.witness) w.push_back(session::to_string(l));
            witnesses.push_back({{"check", c.key()}, {"witness", w}});
        }
    }
    json doc = {{"status", std::string(to_string(r.status))},
                {"protocol_violation", r.status == PipelineStatus::ProtocolViolation},
                {"violations", violations},
                {"sessions", sessions},
                {"checks", checks},
                {"interconnect", r.interconnect ? net::to_json(*r.interconnect) : json(nullptr)},
                {"floorplan", r.floorplan ? layout::to_json(*r.floorplan) : json(nullptr)},
                {"timing_ms", r.timing_ms}};
    if (!witnesses.empty()) doc["witnesses"] = witnesses;
    return doc;
}

int exit_code(const PipelineReport& r) {
    return r.status == PipelineStatus::Ok && r.fit() ? 0 : 1;
}

}  // namespace vip::service
