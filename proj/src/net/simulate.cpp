#include "vip/net/simulate.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>

namespace vip::net {

namespace {

std::vector<std::size_t> schedule_order(const Workload& w) {
    const std::size_t n = w.transactions.size();
    std::vector<std::vector<std::size_t>> after(n);
    std::vector<std::size_t> indegree(n, 0);
    auto edge = [&](std::size_t from, std::size_t to) {
        after[from].push_back(to);
        ++indegree[to];
    };
    std::map<std::string, std::size_t> last_in_session;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& t = w.transactions[i];
        auto it = last_in_session.find(t.session);
        if (it != last_in_session.end()) edge(it->second, i);
        last_in_session[t.session] = i;
        for (std::size_t d : t.depends_on) edge(d, i);
    }
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
    for (std::size_t i = 0; i < n; ++i) {
        if (indegree[i] == 0) ready.push(i);
    }
    std::vector<std::size_t> order;
    while (!ready.empty()) {
        std::size_t i = ready.top();
        ready.pop();
        order.push_back(i);
        for (std::size_t j : after[i]) {
            if (--indegree[j] == 0) ready.push(j);
        }
    }
    if (order.size() != n) throw std::invalid_argument("workload ordering constraints form a cycle");
    return order;
}

std::vector<std::vector<std::size_t>> predecessors(const Workload& w) {
    std::vector<std::vector<std::size_t>> pred(w.transactions.size());
    std::map<std::string, std::size_t> last_in_session;
    for (std::size_t i = 0; i < w.transactions.size(); ++i) {
        const auto& t = w.transactions[i];
        auto it = last_in_session.find(t.session);
        if (it != last_in_session.end()) pred[i].push_back(it->second);
        last_in_session[t.session] = i;
        pred[i].insert(pred[i].end(), t.depends_on.begin(), t.depends_on.end());
    }
    return pred;
}

}  // namespace

SimReport simulate(const TopologyModel& topology, const Workload& workload) {
    topology.validate();
    workload.validate();
    if (workload.nodes_required() > topology.nodes) {
        throw std::invalid_argument(fmt::format("workload '{}' needs {} nodes, topology has {}",
                                                workload.name, workload.nodes_required(),
                                                topology.nodes));
    }
    const auto order = schedule_order(workload);
    const auto pred = predecessors(workload);

    std::vector<std::uint64_t> node_ready(topology.nodes, 0);
    for (const auto& p : workload.preload) node_ready[p.node] = std::max(node_ready[p.node], p.cycles);
    std::uint64_t bus_free = 0;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> link_free;

    SimReport r;
    r.kind = topology.kind;
    r.nodes = topology.nodes;
    r.transactions.resize(workload.transactions.size());
    for (std::size_t i : order) {
        const auto& t = workload.transactions[i];
        const std::uint64_t beats = (t.bits + topology.width_bits - 1) / topology.width_bits;
        std::uint64_t start = node_ready[t.src];
        for (std::size_t p : pred[i]) start = std::max(start, r.transactions[p].end);
        std::uint64_t end = 0;
        if (topology.kind == TopologyKind::SnoopyBus) {
            start = std::max(start, bus_free);
            end = start + topology.arbitration_cycles + beats + t.compute_cycles;
            bus_free = end;
        } else {
            auto link = std::minmax(t.src, t.dst);
            std::uint64_t& free = link_free[{link.first, link.second}];
            start = std::max(start, free);
            free = start + beats;
            end = start + beats + t.compute_cycles;
        }
        node_ready[t.dst] = std::max(node_ready[t.dst], end);
        r.transactions[i] = {i, start, end};
        r.total_cycles = std::max(r.total_cycles, end);
    }

    double span = 0;
    for (const auto& tt : r.transactions) span += static_cast<double>(tt.end - tt.start);
    if (!r.transactions.empty()) r.cycles_per_transaction = span / static_cast<double>(r.transactions.size());
    r.latency_us = static_cast<double>(r.total_cycles) / topology.frequency_mhz;
    auto ap = area_power(topology);
    r.area = ap.area;
    r.leakage = ap.leakage;
    return r;
}

nlohmann::json to_json(const SimReport& r) {
    nlohmann::json tx = nlohmann::json::array();
    for (const auto& t : r.transactions) tx.push_back({{"index", t.index}, {"start", t.start}, {"end", t.end}});
    return {{"topology", std::string(to_string(r.kind))},
            {"nodes", r.nodes},
            {"total_cycles", r.total_cycles},
            {"latency_us", r.latency_us},
            {"cycles_per_transaction", r.cycles_per_transaction},
            {"area", r.area},
            {"leakage", r.leakage},
            {"transactions", tx}};
}

}  // namespace vip::net
