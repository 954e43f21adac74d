#include "vip/net/topology.hpp"

#include <fmt/format.h>

#include <stdexcept>

namespace vip::net {

std::string_view to_string(TopologyKind kind) {
    return kind == TopologyKind::SnoopyBus ? "snoopy-bus" : "crossbar";
}

std::optional<TopologyKind> parse_topology_kind(std::string_view text) {
    if (text == "bus" || text == "snoopy-bus" || text == "snoopy") return TopologyKind::SnoopyBus;
    if (text == "crossbar" || text == "xbar") return TopologyKind::Crossbar;
    return std::nullopt;
}

void TopologyModel::validate() const {
    if (nodes < 2) throw std::invalid_argument(fmt::format("topology needs N >= 2, got {}", nodes));
    if (width_bits < 1) throw std::invalid_argument("data width must be >= 1 bit");
    if (!(c_node > 0 && c_bus > 0 && c_link > 0 && leakage_per_area > 0 && frequency_mhz > 0)) {
        throw std::invalid_argument("topology coefficients must be positive");
    }
}

std::uint64_t link_count(const TopologyModel& t) {
    if (t.kind == TopologyKind::SnoopyBus) return 1;
    return static_cast<std::uint64_t>(t.nodes) * (t.nodes - 1) / 2;
}

AreaPower area_power(const TopologyModel& t) {
    t.validate();
    double area = t.c_node * t.nodes;
    if (t.kind == TopologyKind::SnoopyBus) {
        area += t.c_bus;
    } else {
        area += t.c_link * static_cast<double>(link_count(t));
    }
    return {area, t.leakage_per_area * area};
}

}  // namespace vip::net
