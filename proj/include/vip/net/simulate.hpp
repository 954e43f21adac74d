#pragma once

#include "vip/net/topology.hpp"
#include "vip/net/workload.hpp"

#include <json.hpp>

#include <cstdint>
#include <vector>

namespace vip::net {

struct TransactionTiming {
    std::size_t index = 0;
    std::uint64_t start = 0;
    std::uint64_t end = 0;
};

struct SimReport {
    TopologyKind kind = TopologyKind::SnoopyBus;
    std::uint32_t nodes = 0;
    std::uint64_t total_cycles = 0;
    double latency_us = 0.0;
    /// Indexed like the workload's transactions.
    std::vector<TransactionTiming> transactions;
    double area = 0.0;
    double leakage = 0.0;
    /// Mean of (end - start) over all transactions.
    double cycles_per_transaction = 0.0;
};

/// Discrete list scheduler. Transactions are taken in topological order of
/// their constraints (session order plus explicit dependencies), ties by
/// index. Each starts at the latest of: its resource being free, its source
/// node being ready, and the end of everything it depends on.
///   bus:      one shared resource; cost = arbitration + ceil(bits/width)
///             + compute, and the bus is held until the end
///   crossbar: one link per unordered pair, held for ceil(bits/width);
///             end = start + beats + compute
/// The destination is ready at the end. Throws std::invalid_argument for a
/// node outside the topology or a cycle in the ordering constraints.
SimReport simulate(const TopologyModel& topology, const Workload& workload);

nlohmann::json to_json(const SimReport& report);

}  // namespace vip::net
