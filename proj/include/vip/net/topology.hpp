#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace vip::net {

enum class TopologyKind { SnoopyBus, Crossbar };

std::string_view to_string(TopologyKind kind);
/// Accepts "bus", "snoopy-bus", "crossbar".
std::optional<TopologyKind> parse_topology_kind(std::string_view text);

/// Frequency that maps TC1's 417 simulated bus cycles onto its measured
/// 0.5371 us (see calibrate in sweep.hpp).
inline constexpr double default_frequency_mhz = 417.0 / 0.5371;

struct TopologyModel {
    TopologyKind kind = TopologyKind::SnoopyBus;
    std::uint32_t nodes = 4;
    std::uint32_t width_bits = 32;
    std::uint32_t arbitration_cycles = 1;
    /// Area units per node.
    double c_node = 1.0;
    /// Shared-bus area (bus only).
    double c_bus = 2.0;
    /// Area per dedicated link between an unordered node pair (crossbar only).
    double c_link = 1.0;
    /// Leakage power units per area unit.
    double leakage_per_area = 0.05;
    double frequency_mhz = default_frequency_mhz;

    /// Throws std::invalid_argument unless N >= 2, width >= 1 and all
    /// coefficients are positive.
    void validate() const;
    bool operator==(const TopologyModel&) const = default;
};

struct AreaPower {
    double area = 0.0;
    double leakage = 0.0;
};

/// bus:      c_node * N + c_bus
/// crossbar: c_node * N + c_link * N (N - 1) / 2
/// leakage = leakage_per_area * area
AreaPower area_power(const TopologyModel& topology);

/// Link count between node pairs: 1 for the bus, N(N-1)/2 for the crossbar.
std::uint64_t link_count(const TopologyModel& topology);

}  // namespace vip::net
