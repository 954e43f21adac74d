#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace vip::net {

struct Transaction {
    std::uint32_t src = 0;
    std::uint32_t dst = 0;
    std::uint64_t bits = 1;
    /// Cycles the destination computes after receiving.
    std::uint64_t compute_cycles = 0;
    std::string session;
    /// Extra ordering constraints (indices of earlier or later transactions)
    /// beyond the implicit order within a session.
    std::vector<std::size_t> depends_on;
};

/// Compute a node performs before it takes part in any transfer.
struct Preload {
    std::uint32_t node = 0;
    std::uint64_t cycles = 0;
};

struct Workload {
    std::string name;
    std::vector<std::string> node_names;
    std::vector<Transaction> transactions;
    std::vector<Preload> preload;

    /// Smallest topology that fits: max node index + 1, at least 2.
    std::uint32_t nodes_required() const;
    /// Throws std::invalid_argument for a zero-bit transaction or an
    /// out-of-range dependency.
    void validate() const;
};

struct MacSummary {
    std::uint64_t conv = 0;
    std::uint64_t relu = 0;
    std::uint64_t pool = 0;
    std::uint64_t fc = 0;
    std::uint64_t total() const { return conv + relu + pool + fc; }
};

struct CnnWorkload {
    Workload workload;
    MacSummary macs;
};

/// Four-node inference pipeline Conv(0) -> ReLU(1) -> Pool(2) -> FC(3) on an
/// n x n input with a k x k kernel. Let m = n - k + 1:
///   conv MACs = m^2 k^2 (computed at Conv before its first send)
///   FC MACs   = floor(m/2)^2 (computed at FC after the last transfer)
/// Conv->ReLU and ReLU->Pool carry m^2 32-bit words, Pool->FC carries
/// floor(m/2)^2 words. Throws std::invalid_argument unless n > k >= 1 and
/// m >= 2.
CnnWorkload cnn_workload(std::uint32_t n, std::uint32_t k, double cycles_per_mac = 1.0);

/// Nodes 1..N-1 each send `bits` to node 0, one independent session each.
Workload all_to_one(std::uint32_t nodes, std::uint64_t bits = 32);

/// `cnn:n=8,k=3` or `all-to-one:bits=64` (node count from the topology).
Workload parse_workload(std::string_view spec, std::uint32_t nodes, double cycles_per_mac = 1.0);

}  // namespace vip::net
