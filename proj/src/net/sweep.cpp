#include "vip/net/sweep.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace vip::net {

namespace {

ComparisonRow row(const Workload& w, const TopologyModel& t) {
    SimReport r = simulate(t, w);
    return {w.name, t.nodes, t.kind, r.total_cycles, r.latency_us, r.area, r.leakage,
            r.cycles_per_transaction};
}

struct Job {
    Workload workload;
    TopologyModel topology;
};

std::vector<ComparisonRow> run(const std::vector<Job>& jobs, Execution execution) {
    std::vector<ComparisonRow> rows(jobs.size());
    const auto n = static_cast<std::ptrdiff_t>(jobs.size());
    if (execution == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < n; ++i) rows[i] = row(jobs[i].workload, jobs[i].topology);
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) rows[i] = row(jobs[i].workload, jobs[i].topology);
    }
    return rows;
}

}  // namespace

std::vector<ComparisonRow> compare(const std::vector<Workload>& workloads,
                                   const std::vector<TopologyModel>& topologies, Execution execution) {
    if (workloads.empty() || topologies.size() < 2) {
        throw std::invalid_argument("compare needs a workload and at least two topologies");
    }
    std::vector<TopologyModel> sorted = topologies;
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        return std::tie(a.nodes, a.kind) < std::tie(b.nodes, b.kind);
    });
    std::vector<Job> jobs;
    for (const auto& w : workloads) {
        for (const auto& t : sorted) jobs.push_back({w, t});
    }
    return run(jobs, execution);
}

std::vector<ComparisonRow> sweep_nodes(const TopologyModel& base,
                                       const std::vector<std::uint32_t>& node_counts,
                                       const std::vector<TopologyKind>& kinds,
                                       const std::function<Workload(std::uint32_t)>& workload_for,
                                       Execution execution) {
    std::vector<Job> jobs;
    for (std::uint32_t n : node_counts) {
        Workload w = workload_for(n);
        for (TopologyKind k : kinds) {
            TopologyModel t = base;
            t.nodes = n;
            t.kind = k;
            jobs.push_back({w, t});
        }
    }
    return run(jobs, execution);
}

std::string to_csv(const std::vector<ComparisonRow>& rows) {
    std::string out = "N,topology,cycles,latency_us,area,leakage\n";
    for (const auto& r : rows) {
        out += fmt::format("{},{},{},{:.6f},{:.6f},{:.6f}\n", r.nodes, to_string(r.kind), r.cycles,
                           r.latency_us, r.area, r.leakage);
    }
    return out;
}

nlohmann::json to_json(const std::vector<ComparisonRow>& rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rows) {
        out.push_back({{"workload", r.workload},
                       {"N", r.nodes},
                       {"topology", std::string(to_string(r.kind))},
                       {"cycles", r.cycles},
                       {"latency_us", r.latency_us},
                       {"area", r.area},
                       {"leakage", r.leakage},
                       {"cycles_per_transaction", r.cycles_per_transaction}});
    }
    return out;
}

Calibration calibrate(const TopologyModel& bus, double reference_us, double cycles_per_mac) {
    if (reference_us <= 0) throw std::invalid_argument("reference latency must be positive");
    TopologyModel t = bus;
    t.kind = TopologyKind::SnoopyBus;
    SimReport r = simulate(t, cnn_workload(8, 3, cycles_per_mac).workload);
    Calibration c;
    c.cycles_per_mac = cycles_per_mac;
    c.reference_cycles = r.total_cycles;
    c.reference_us = reference_us;
    c.frequency_mhz = static_cast<double>(r.total_cycles) / reference_us;
    return c;
}

}  // namespace vip::net
