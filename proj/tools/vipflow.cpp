// vipflow: command-line front end for the protocol-to-layout toolchain.
//
// Exit codes: 0 all Equivalent / fit, 1 protocol violation / no fit,
// 2 usage or input error.

#include "vip/equiv/binding.hpp"
#include "vip/equiv/suite.hpp"
#include "vip/frontend/parser.hpp"
#include "vip/frontend/sessions.hpp"
#include "vip/frontend/validate.hpp"
#include "vip/hw/candidates.hpp"
#include "vip/hw/classify.hpp"
#include "vip/hw/fsm_json.hpp"
#include "vip/layout/svg.hpp"
#include "vip/net/simulate.hpp"
#include "vip/net/sweep.hpp"
#include "vip/service/pipeline.hpp"
#include "vip/service/server.hpp"
#include "vip/session/lts_json.hpp"
#include "vip/session/notation.hpp"
#include "vip/session/ops.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace vip;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_violation = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError(fmt::format("cannot write '{}'", path));
    out << text;
}

void emit(const std::string& path, const json& doc) {
    if (path.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        write_text(path, doc.dump(2) + "\n");
    }
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

/// `A..B` or `A,B,C`.
std::vector<std::uint32_t> parse_range(const std::string& text) {
    try {
        auto dots = text.find("..");
        if (dots != std::string::npos) {
            auto lo = static_cast<std::uint32_t>(std::stoul(text.substr(0, dots)));
            auto hi = static_cast<std::uint32_t>(std::stoul(text.substr(dots + 2)));
            if (lo > hi) throw UsageError(fmt::format("empty range '{}'", text));
            std::vector<std::uint32_t> out;
            for (auto v = lo; v <= hi; ++v) out.push_back(v);
            return out;
        }
        std::vector<std::uint32_t> out;
        for (const auto& v : split(text, ',')) out.push_back(static_cast<std::uint32_t>(std::stoul(v)));
        if (out.empty()) throw UsageError("empty range");
        return out;
    } catch (const std::logic_error&) {
        throw UsageError(fmt::format("bad range '{}'", text));
    }
}

// ---- check -----------------------------------------------------------------

struct CheckArgs {
    std::string software;
    std::string program;
    std::string object;
    std::string peer;
    std::string ip;
    std::string filter;
    std::string report;
    std::string project;
    std::size_t iterations = 0;
    bool serial = false;
};

session::SessionLts load_software(const std::string& text) {
    if (fs::exists(text)) return session::load_lts(text);
    return session::parse_session(text);
}

int run_check(const CheckArgs& a) {
    const Execution exec = a.serial ? Execution::Serial : Execution::Parallel;
    if (!a.project.empty()) {
        service::PipelineReport r = service::run_pipeline(service::load_project(a.project), exec);
        json checks = json::array();
        for (const auto& c : r.checks) checks.push_back(service::to_json(c));
        emit(a.report, {{"status", std::string(service::to_string(r.status))}, {"checks", checks}});
        return r.status == service::PipelineStatus::Ok ? exit_ok : exit_violation;
    }
    if (a.ip.empty()) throw UsageError("check needs --ip (or --project)");

    std::set<std::string> prune;
    std::size_t iterations = a.iterations;
    session::SessionLts software;
    if (!a.program.empty()) {
        if (a.object.empty()) throw UsageError("--program needs --object");
        frontend::ObjectGraph graph = frontend::parse_program(service::read_file(a.program));
        auto violations = frontend::validate_constraints(graph, service::read_file(a.program));
        if (!violations.empty()) {
            for (const auto& v : violations) {
                std::cerr << fmt::format("{}:{}:{}: {}: {}\n", a.program, v.location.line, v.location.column,
                                         frontend::to_string(v.kind), v.message);
            }
            return exit_violation;
        }
        auto callers = frontend::derive_sessions(graph, {}, frontend::Perspective::Caller);
        auto callees = frontend::derive_sessions(graph, {}, frontend::Perspective::Callee);
        std::optional<std::size_t> pick;
        std::size_t edges = 0;
        for (const auto& e : graph.edges) edges += e.caller == a.object || e.callee == a.object;
        for (std::size_t i = 0; i < callers.size(); ++i) {
            const auto& p = callers[i];
            if (p.caller != a.object && p.callee != a.object) continue;
            const std::string& other = p.caller == a.object ? p.callee : p.caller;
            if (!a.peer.empty() && other != a.peer) {
                for (const auto& l : p.session.actions()) prune.insert(l.message);
                continue;
            }
            if (pick) throw UsageError(fmt::format("'{}' talks to several objects; choose one with --peer", a.object));
            pick = i;
        }
        if (!pick) throw UsageError(fmt::format("no call pair involves '{}'", a.object));
        software = callers[*pick].caller == a.object ? callers[*pick].session : callees[*pick].session;
        for (const auto& l : software.actions()) prune.erase(l.message);
        if (iterations == 0) iterations = edges;
    } else {
        if (a.software.empty()) throw UsageError("check needs --software or --program");
        software = load_software(a.software);
    }
    if (iterations == 0) iterations = 1;

    std::set<std::string> filter;
    for (const auto& m : split(a.filter, ',')) filter.insert(m);
    hw::LabeledFsm fsm = hw::classify_actions(hw::load_fsm(a.ip));
    auto candidates = hw::extract_candidates(fsm, iterations);
    prune.insert(filter.begin(), filter.end());
    equiv::EquivalenceVerdict v = equiv::check_binding(software, candidates, prune, exec);
    v.filtered = filter;
    emit(a.report, equiv::to_json(v));
    if (!filter.empty()) std::cerr << fmt::format("note: control filter applied: {}\n", fmt::join(filter, ","));
    return v.equivalent() ? exit_ok : exit_violation;
}

// ---- simulate --------------------------------------------------------------

struct SimulateArgs {
    std::string topology = "bus";
    std::uint32_t nodes = 0;
    std::uint32_t width = 32;
    std::uint32_t arbitration = 1;
    double freq = net::default_frequency_mhz;
    double cycles_per_mac = 1.0;
    std::string workload = "cnn:n=8,k=3";
    std::string sweep;
    std::string out;
    bool cnn_reference = false;
    bool serial = false;
};

int run_cnn_reference(const SimulateArgs& a) {
    net::TopologyModel bus;
    bus.width_bits = a.width;
    bus.arbitration_cycles = a.arbitration;
    net::Calibration cal = net::calibrate(bus, net::cnn_reference[0].snoopy_us, a.cycles_per_mac);
    bus.frequency_mhz = cal.frequency_mhz;
    json rows = json::array();
    for (const auto& row : net::cnn_reference) {
        net::CnnWorkload w = net::cnn_workload(row.n, row.k, cal.cycles_per_mac);
        net::SimReport r = net::simulate(bus, w.workload);
        rows.push_back({{"case", row.name},
                        {"n", row.n},
                        {"k", row.k},
                        {"conv_macs", w.macs.conv},
                        {"fc_macs", w.macs.fc},
                        {"top_macs", w.macs.total()},
                        {"printed", {{"conv", row.conv_macs}, {"fc", row.fc_macs}, {"top", row.top_macs}}},
                        {"cycles", r.total_cycles},
                        {"latency_us", r.latency_us},
                        {"printed_us", row.snoopy_us},
                        {"relative_error", (r.latency_us - row.snoopy_us) / row.snoopy_us}});
    }
    emit(a.out, {{"calibration",
                  {{"cycles_per_mac", cal.cycles_per_mac},
                   {"reference_cycles", cal.reference_cycles},
                   {"reference_us", cal.reference_us},
                   {"frequency_mhz", cal.frequency_mhz}}},
                 {"rows", rows}});
    return exit_ok;
}

int run_simulate(const SimulateArgs& a) {
    if (a.cnn_reference) return run_cnn_reference(a);
    std::vector<net::TopologyKind> kinds;
    for (const auto& k : split(a.topology, ',')) {
        auto kind = net::parse_topology_kind(k);
        if (!kind) throw UsageError(fmt::format("unknown topology '{}'", k));
        kinds.push_back(*kind);
    }
    if (kinds.empty()) throw UsageError("--topology is empty");
    net::TopologyModel base;
    base.width_bits = a.width;
    base.arbitration_cycles = a.arbitration;
    base.frequency_mhz = a.freq;
    const Execution exec = a.serial ? Execution::Serial : Execution::Parallel;
    const bool csv = a.out.size() >= 4 && a.out.substr(a.out.size() - 4) == ".csv";

    std::vector<net::ComparisonRow> rows;
    if (!a.sweep.empty()) {
        if (a.sweep.rfind("nodes=", 0) != 0) throw UsageError("--sweep takes nodes=A..B or nodes=A,B,...");
        rows = net::sweep_nodes(base, parse_range(a.sweep.substr(6)), kinds,
                                [&](std::uint32_t n) { return net::parse_workload(a.workload, n, a.cycles_per_mac); },
                                exec);
    } else {
        std::uint32_t nodes = a.nodes;
        if (nodes == 0) nodes = net::parse_workload(a.workload, 2, a.cycles_per_mac).nodes_required();
        base.nodes = nodes;
        net::Workload w = net::parse_workload(a.workload, nodes, a.cycles_per_mac);
        if (kinds.size() == 1 && !csv) {
            base.kind = kinds.front();
            emit(a.out, net::to_json(net::simulate(base, w)));
            return exit_ok;
        }
        for (auto k : kinds) {
            net::TopologyModel t = base;
            t.kind = k;
            net::SimReport r = net::simulate(t, w);
            rows.push_back({w.name, t.nodes, k, r.total_cycles, r.latency_us, r.area, r.leakage,
                            r.cycles_per_transaction});
        }
    }
    if (csv) {
        write_text(a.out, net::to_csv(rows));
    } else {
        emit(a.out, net::to_json(rows));
    }
    return exit_ok;
}

// ---- layout ----------------------------------------------------------------

struct LayoutArgs {
    std::string templates;
    std::string select;
    std::string box;
    double spacing = 5.0;
    std::string svg;
    std::string out;
    std::string project;
};

std::pair<double, double> parse_box(const std::string& text) {
    auto x = text.find('x');
    try {
        if (x == std::string::npos) throw std::invalid_argument(text);
        return {std::stod(text.substr(0, x)), std::stod(text.substr(x + 1))};
    } catch (const std::logic_error&) {
        throw UsageError(fmt::format("--box takes WxH, got '{}'", text));
    }
}

/// `block=variant` (block named after its IP) or `block=ip:variant`.
layout::Selections parse_selections(const std::string& text, const layout::TemplateLibrary& lib) {
    layout::Selections out;
    for (const auto& item : split(text, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw UsageError(fmt::format("selection '{}' lacks '='", item));
        std::string block = item.substr(0, eq);
        std::string rest = item.substr(eq + 1);
        auto colon = rest.find(':');
        layout::Selection s = colon == std::string::npos ? layout::Selection{block, rest}
                                                         : layout::Selection{rest.substr(0, colon), rest.substr(colon + 1)};
        if (!lib.find(s.ip, s.variant)) {
            throw UsageError(fmt::format("selection '{}': no variant '{}' of IP '{}'", item, s.variant, s.ip));
        }
        out[block] = s;
    }
    return out;
}

int run_layout(const LayoutArgs& a) {
    layout::TemplateLibrary lib;
    layout::Selections selections;
    double w = 0, h = 0, spacing = a.spacing;
    if (!a.project.empty()) {
        service::Project p = service::load_project(a.project);
        if (!p.templates.empty()) lib = layout::load_templates_file(p.resolve(p.templates));
        selections = p.selections;
        w = p.box_width;
        h = p.box_height;
        spacing = p.spacing;
    }
    if (!a.templates.empty()) lib = layout::load_templates_file(a.templates);
    if (!a.select.empty()) selections = parse_selections(a.select, lib);
    if (!a.box.empty()) std::tie(w, h) = parse_box(a.box);
    if (w <= 0 || h <= 0) throw UsageError("layout needs --box (or --project)");

    layout::Floorplan plan = layout::compose(lib, selections, w, h, spacing);
    layout::PlanMetrics m = layout::metrics(lib, selections);
    json doc = layout::to_json(plan);
    doc["metrics"] = {{"area", m.area}, {"leakage", m.leakage}, {"min_frequency", m.min_frequency}};
    emit(a.out, doc);
    if (!a.svg.empty()) write_text(a.svg, layout::render_svg(plan));
    return plan.fit ? exit_ok : exit_violation;
}

// ---- scenarios -------------------------------------------------------------

struct ScenarioArgs {
    std::uint64_t seed = 1;
    std::size_t count = 10000;
    std::string lengths = "3..20";
    std::string mutations;
    std::string out;
    bool no_split = false;
    bool serial = false;
};

int run_scenarios(const ScenarioArgs& a) {
    equiv::SuiteConfig cfg;
    cfg.seed = a.seed;
    cfg.count = a.count;
    auto lengths = parse_range(a.lengths);
    cfg.min_length = lengths.front();
    cfg.max_length = lengths.back();
    cfg.beat_split = !a.no_split;
    if (!a.mutations.empty() && a.mutations != "all") {
        cfg.mutations.clear();
        for (const auto& m : split(a.mutations, ',')) {
            auto mut = equiv::parse_mutation(m);
            if (!mut) throw UsageError(fmt::format("unknown mutation '{}'", m));
            cfg.mutations.push_back(*mut);
        }
    }
    equiv::SuiteReport r = equiv::run_suite(cfg, a.serial ? Execution::Serial : Execution::Parallel);
    json summary = equiv::summary_json(r);
    if (!a.out.empty()) {
        fs::create_directories(a.out);
        write_text((fs::path(a.out) / "summary.json").string(), summary.dump(2) + "\n");
        std::ofstream lines(fs::path(a.out) / "scenarios.jsonl", std::ios::trunc);
        for (const auto& s : r.results) lines << equiv::to_json(s).dump() << "\n";
    }
    std::cout << summary.dump(2) << "\n";
    const bool sound = r.counts[static_cast<std::size_t>(equiv::Classification::FalsePositive)] == 0 &&
                       r.oracle_disagreements == 0;
    return sound ? exit_ok : exit_violation;
}

// ---- pipeline / serve ------------------------------------------------------

struct PipelineArgs {
    std::string project;
    std::string report;
    bool save = false;
    bool serial = false;
};

int run_pipeline_cmd(const PipelineArgs& a) {
    service::Project p = service::load_project(a.project);
    service::PipelineReport r = service::run_pipeline(p, a.serial ? Execution::Serial : Execution::Parallel);
    emit(a.report, service::to_json(r));
    if (a.save) {
        service::cache_verdicts(p, r);
        service::refresh_hashes(p);
        service::save_project(p, a.project);
    }
    return service::exit_code(r);
}

struct ServeArgs {
    std::vector<std::string> projects;
    std::string host = "127.0.0.1";
    int port = 8080;
    bool persist = false;
};

service::HttpServer* active_server = nullptr;

int run_serve(const ServeArgs& a) {
    service::Service svc;
    for (const auto& path : a.projects) {
        service::Project p = service::load_project(path);
        std::string id = p.name.empty() ? fs::path(path).stem().string() : p.name;
        std::cerr << fmt::format("project '{}' <- {}\n", id, path);
        svc.add_project(id, std::move(p), a.persist ? std::optional<fs::path>(path) : std::nullopt);
    }
    service::HttpServer server(svc);
    active_server = &server;
    std::signal(SIGINT, [](int) {
        if (active_server) active_server->stop();
    });
    std::cerr << fmt::format("listening on http://{}:{}\n", a.host, a.port);
    server.run(a.host, a.port);
    active_server = nullptr;
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vipflow: object protocols to verified hardware layouts"};
    app.require_subcommand(1);

    CheckArgs ca;
    auto* check = app.add_subcommand("check", "check a software session against an IP's FSM");
    check->add_option("--software", ca.software, "LTS JSON file or session notation");
    check->add_option("--program", ca.program, "derive the session from a .oo program");
    check->add_option("--object", ca.object, "object whose side is checked (with --program)");
    check->add_option("--peer", ca.peer, "the other object of the pair (with --program)");
    check->add_option("--ip", ca.ip, "FSM interchange (.json) or toy HDL (.fsm)");
    check->add_option("--filter-controls", ca.filter, "comma-separated control messages to prune");
    check->add_option("--iterations", ca.iterations, "FSM iterations to unroll");
    check->add_option("--report", ca.report, "write the report here instead of stdout");
    check->add_option("--project", ca.project, "check every binding of a project");
    check->add_flag("--serial", ca.serial, "use the serial reference path");

    SimulateArgs sa;
    auto* simulate = app.add_subcommand("simulate", "simulate a workload on bus/crossbar interconnects");
    simulate->add_option("--topology", sa.topology, "bus, crossbar, or both comma-separated");
    simulate->add_option("--nodes", sa.nodes, "node count (default: what the workload needs)");
    simulate->add_option("--width", sa.width, "data bits per beat");
    simulate->add_option("--arbitration", sa.arbitration, "bus arbitration cycles");
    simulate->add_option("--freq", sa.freq, "clock in MHz");
    simulate->add_option("--cycles-per-mac", sa.cycles_per_mac, "compute cycles per MAC");
    simulate->add_option("--workload", sa.workload, "cnn:n=8,k=3 or all-to-one:bits=64");
    simulate->add_option("--sweep", sa.sweep, "nodes=2..16 or nodes=2,4,8,16");
    simulate->add_option("--out", sa.out, "report.json or table.csv (default: JSON on stdout)");
    simulate->add_flag("--cnn-reference", sa.cnn_reference, "calibrate on TC1 and predict the CNN test cases");
    simulate->add_flag("--serial", sa.serial, "use the serial reference path for sweeps");

    LayoutArgs la;
    auto* layout_cmd = app.add_subcommand("layout", "compose a floorplan from template variants");
    layout_cmd->add_option("--templates", la.templates, "template manifest");
    layout_cmd->add_option("--select", la.select, "block=variant or block=ip:variant, comma-separated");
    layout_cmd->add_option("--box", la.box, "bounding box WxH in um");
    layout_cmd->add_option("--spacing", la.spacing, "channel spacing in um");
    layout_cmd->add_option("--svg", la.svg, "write the rendered floorplan");
    layout_cmd->add_option("--out", la.out, "write the floorplan JSON here instead of stdout");
    layout_cmd->add_option("--project", la.project, "take templates, selections and box from a project");

    ScenarioArgs sc;
    auto* scenarios = app.add_subcommand("scenarios", "run the seeded mutation suite");
    scenarios->add_option("--seed", sc.seed, "suite seed");
    scenarios->add_option("--count", sc.count, "number of scenarios");
    scenarios->add_option("--lengths", sc.lengths, "A..B");
    scenarios->add_option("--mutations", sc.mutations, "comma-separated mutation axes (default all)");
    scenarios->add_option("--out", sc.out, "directory for summary.json and scenarios.jsonl");
    scenarios->add_flag("--no-split", sc.no_split, "do not split a message into beats");
    scenarios->add_flag("--serial", sc.serial, "use the serial reference path");

    PipelineArgs pa;
    auto* pipeline = app.add_subcommand("pipeline", "run the whole flow on a project");
    pipeline->add_option("--project", pa.project, "project document")->required();
    pipeline->add_option("--report", pa.report, "write the report here instead of stdout");
    pipeline->add_flag("--save", pa.save, "store verdicts and file hashes back into the project");
    pipeline->add_flag("--serial", pa.serial, "use the serial reference path");

    ServeArgs va;
    auto* serve = app.add_subcommand("serve", "serve projects over HTTP");
    serve->add_option("--project", va.projects, "project document (repeatable)")->required();
    serve->add_option("--host", va.host, "bind address");
    serve->add_option("--port", va.port, "port");
    serve->add_flag("--persist", va.persist, "write mutations back to the project files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*check) return run_check(ca);
        if (*simulate) return run_simulate(sa);
        if (*layout_cmd) return run_layout(la);
        if (*scenarios) return run_scenarios(sc);
        if (*pipeline) return run_pipeline_cmd(pa);
        if (*serve) return run_serve(va);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
