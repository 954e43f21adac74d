#pragma once

#include "vip/execution.hpp"
#include "vip/net/simulate.hpp"

#include <functional>
#include <string>
#include <vector>

namespace vip::net {

struct ComparisonRow {
    std::string workload;
    std::uint32_t nodes = 0;
    TopologyKind kind = TopologyKind::SnoopyBus;
    std::uint64_t cycles = 0;
    double latency_us = 0.0;
    double area = 0.0;
    double leakage = 0.0;
    double cycles_per_transaction = 0.0;
};

/// Every workload on every topology. Rows are ordered by (workload index,
/// N, topology kind) whatever the execution mode.
std::vector<ComparisonRow> compare(const std::vector<Workload>& workloads,
                                   const std::vector<TopologyModel>& topologies,
                                   Execution execution = Execution::Parallel);

/// One row per (N, kind): `base` with its node count replaced by N, running
/// `workload_for(N)`.
std::vector<ComparisonRow> sweep_nodes(const TopologyModel& base,
                                       const std::vector<std::uint32_t>& node_counts,
                                       const std::vector<TopologyKind>& kinds,
                                       const std::function<Workload(std::uint32_t)>& workload_for,
                                       Execution execution = Execution::Parallel);

/// Fixed header `N,topology,cycles,latency_us,area,leakage`.
std::string to_csv(const std::vector<ComparisonRow>& rows);
nlohmann::json to_json(const std::vector<ComparisonRow>& rows);

/// Reference measurement the latency model is fitted to.
struct Calibration {
    double cycles_per_mac = 1.0;
    std::uint64_t reference_cycles = 0;
    double reference_us = 0.0;
    double frequency_mhz = 0.0;
};

/// Snoopy-bus latencies (us) per test case; TC3's row is internally
/// inconsistent and is carried only for reporting.
struct CnnReferenceRow {
    const char* name;
    std::uint32_t n;
    std::uint32_t k;
    std::uint64_t conv_macs;
    std::uint64_t fc_macs;
    std::uint64_t top_macs;
    double snoopy_us;
};

inline constexpr CnnReferenceRow cnn_reference[] = {
    {"TC1", 8, 3, 324, 9, 333, 0.5371},
    {"TC2", 12, 3, 900, 25, 925, 1.4559},
    {"TC3", 14, 3, 1332, 36, 1456, 2.0867},
    {"TC4", 16, 3, 1764, 49, 1813, 2.8322},
};

/// One MAC per cycle; the frequency is solved so that cnn_workload(8, 3)
/// on `bus` takes exactly `reference_us`. A single reference point cannot
/// fix two unknowns, so cycles-per-MAC is held at `cycles_per_mac`.
Calibration calibrate(const TopologyModel& bus, double reference_us = 0.5371,
                      double cycles_per_mac = 1.0);

}  // namespace vip::net
