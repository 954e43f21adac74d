#include "vip/net/workload.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace vip::net {

std::uint32_t Workload::nodes_required() const {
    std::uint32_t n = 2;
    for (const auto& t : transactions) n = std::max({n, t.src + 1, t.dst + 1});
    for (const auto& p : preload) n = std::max(n, p.node + 1);
    return n;
}

void Workload::validate() const {
    for (std::size_t i = 0; i < transactions.size(); ++i) {
        const auto& t = transactions[i];
        if (t.bits < 1) throw std::invalid_argument(fmt::format("transaction {} carries no bits", i));
        for (std::size_t d : t.depends_on) {
            if (d >= transactions.size() || d == i) {
                throw std::invalid_argument(fmt::format("transaction {} has a bad dependency {}", i, d));
            }
        }
    }
}

CnnWorkload cnn_workload(std::uint32_t n, std::uint32_t k, double cycles_per_mac) {
    if (k < 1 || n <= k || n - k + 1 < 2) {
        throw std::invalid_argument(fmt::format("degenerate CNN sizes n={} k={}", n, k));
    }
    const std::uint64_t m = n - k + 1;
    const std::uint64_t pooled = m / 2;
    CnnWorkload out;
    out.macs.conv = m * m * k * k;
    out.macs.fc = pooled * pooled;

    auto cycles = [&](std::uint64_t macs) {
        return static_cast<std::uint64_t>(std::llround(static_cast<double>(macs) * cycles_per_mac));
    };
    Workload& w = out.workload;
    w.name = fmt::format("cnn:n={},k={}", n, k);
    w.node_names = {"Conv", "ReLU", "Pool", "FC"};
    w.preload.push_back({0, cycles(out.macs.conv)});
    w.transactions.push_back({0, 1, m * m * 32, cycles(out.macs.relu), "cnn", {}});
    w.transactions.push_back({1, 2, m * m * 32, cycles(out.macs.pool), "cnn", {}});
    w.transactions.push_back({2, 3, pooled * pooled * 32, cycles(out.macs.fc), "cnn", {}});
    return out;
}

Workload all_to_one(std::uint32_t nodes, std::uint64_t bits) {
    if (nodes < 2) throw std::invalid_argument("all-to-one needs at least 2 nodes");
    Workload w;
    w.name = fmt::format("all-to-one:bits={}", bits);
    for (std::uint32_t i = 0; i < nodes; ++i) w.node_names.push_back(fmt::format("n{}", i));
    for (std::uint32_t i = 1; i < nodes; ++i) {
        w.transactions.push_back({i, 0, bits, 0, fmt::format("s{}", i), {}});
    }
    return w;
}

Workload parse_workload(std::string_view spec, std::uint32_t nodes, double cycles_per_mac) {
    auto colon = spec.find(':');
    std::string kind(spec.substr(0, colon));
    std::map<std::string, std::uint64_t> params;
    if (colon != std::string_view::npos) {
        std::string_view rest = spec.substr(colon + 1);
        while (!rest.empty()) {
            auto comma = rest.find(',');
            std::string_view item = rest.substr(0, comma);
            auto eq = item.find('=');
            if (eq == std::string_view::npos) {
                throw std::invalid_argument(fmt::format("workload parameter '{}' lacks '='", item));
            }
            try {
                params[std::string(item.substr(0, eq))] = std::stoull(std::string(item.substr(eq + 1)));
            } catch (const std::logic_error&) {
                throw std::invalid_argument(fmt::format("workload parameter '{}' is not a number", item));
            }
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        }
    }
    auto get = [&](const char* key, std::uint64_t fallback) {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };
    if (kind == "cnn") {
        return cnn_workload(static_cast<std::uint32_t>(get("n", 8)), static_cast<std::uint32_t>(get("k", 3)),
                            cycles_per_mac)
            .workload;
    }
    if (kind == "all-to-one") return all_to_one(nodes, get("bits", 32));
    throw std::invalid_argument(fmt::format("unknown workload '{}'", kind));
}

}  // namespace vip::net
