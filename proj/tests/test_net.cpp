#include "support.hpp"

#include "vip/net/simulate.hpp"
#include "vip/net/sweep.hpp"

#include <doctest.h>

using namespace vip;
using namespace vip::net;

namespace {

TopologyModel topo(TopologyKind kind, std::uint32_t n) {
    TopologyModel t;
    t.kind = kind;
    t.nodes = n;
    return t;
}

Workload random_workload(std::mt19937_64& rng, std::uint32_t nodes, std::size_t count) {
    Workload w;
    w.name = "random";
    for (std::size_t i = 0; i < count; ++i) {
        Transaction t;
        t.src = static_cast<std::uint32_t>(rng() % nodes);
        do t.dst = static_cast<std::uint32_t>(rng() % nodes);
        while (t.dst == t.src);
        t.bits = 1 + rng() % 200;
        t.compute_cycles = rng() % 5;
        t.session = "s" + std::to_string(rng() % 3);
        w.transactions.push_back(std::move(t));
    }
    return w;
}

bool overlaps(const TransactionTiming& a, const TransactionTiming& b) {
    return a.start < b.end && b.start < a.end;
}

}  // namespace

TEST_CASE("CNN MAC counts") {
    struct Row {
        std::uint32_t n;
        std::uint64_t conv, fc;
    };
    for (Row r : {Row{8, 324, 9}, Row{12, 900, 25}, Row{14, 1296, 36}, Row{16, 1764, 49}}) {
        CnnWorkload c = cnn_workload(r.n, 3);
        CHECK(c.macs.conv == r.conv);
        CHECK(c.macs.fc == r.fc);
        CHECK(c.macs.total() == r.conv + r.fc);
        CHECK(c.workload.nodes_required() == 4);
    }
    CHECK_THROWS_AS(cnn_workload(3, 3), std::invalid_argument);
    CHECK_THROWS_AS(cnn_workload(4, 0), std::invalid_argument);
}

TEST_CASE("single transaction cost") {
    Workload w;
    w.transactions.push_back({0, 1, 64, 0, "s", {}});
    CHECK(simulate(topo(TopologyKind::SnoopyBus, 2), w).total_cycles == 3);
    CHECK(simulate(topo(TopologyKind::Crossbar, 2), w).total_cycles == 2);
    w.transactions[0].compute_cycles = 5;
    CHECK(simulate(topo(TopologyKind::SnoopyBus, 2), w).total_cycles == 8);
    CHECK(simulate(topo(TopologyKind::Crossbar, 2), w).total_cycles == 7);
}

TEST_CASE("disjoint pairs serialize on the bus and overlap on the crossbar") {
    Workload w;
    w.transactions.push_back({0, 1, 64, 0, "a", {}});
    w.transactions.push_back({2, 3, 64, 0, "b", {}});
    CHECK(simulate(topo(TopologyKind::SnoopyBus, 4), w).total_cycles == 6);
    CHECK(simulate(topo(TopologyKind::Crossbar, 4), w).total_cycles == 2);
}

TEST_CASE("area and leakage") {
    CHECK(area_power(topo(TopologyKind::SnoopyBus, 4)).area == doctest::Approx(6.0));
    CHECK(area_power(topo(TopologyKind::Crossbar, 4)).area == doctest::Approx(10.0));
    CHECK(area_power(topo(TopologyKind::Crossbar, 4)).leakage == doctest::Approx(0.5));
    CHECK(link_count(topo(TopologyKind::Crossbar, 16)) == 120);
    CHECK(link_count(topo(TopologyKind::SnoopyBus, 16)) == 1);
    CHECK_THROWS_AS(topo(TopologyKind::SnoopyBus, 1).validate(), std::invalid_argument);
    TopologyModel bad = topo(TopologyKind::Crossbar, 4);
    bad.c_link = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("invalid workloads") {
    Workload w;
    w.transactions.push_back({0, 5, 8, 0, "s", {}});
    CHECK_THROWS_AS(simulate(topo(TopologyKind::SnoopyBus, 4), w), std::invalid_argument);
    w.transactions = {{0, 1, 8, 0, "a", {1}}, {1, 0, 8, 0, "b", {0}}};
    CHECK_THROWS_AS(simulate(topo(TopologyKind::SnoopyBus, 4), w), std::invalid_argument);
    w.transactions = {{0, 1, 0, 0, "a", {}}};
    CHECK_THROWS_AS(w.validate(), std::invalid_argument);
}

TEST_CASE("schedule properties on random workloads") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 200; ++i) {
        std::uint32_t n = 2 + rng() % 7;
        Workload w = random_workload(rng, n, 1 + rng() % 20);
        SimReport bus = simulate(topo(TopologyKind::SnoopyBus, n), w);
        SimReport xbar = simulate(topo(TopologyKind::Crossbar, n), w);
        REQUIRE(bus.transactions.size() == w.transactions.size());
        for (const SimReport* r : {&bus, &xbar}) {
            std::uint64_t last = 0;
            for (std::size_t t = 0; t < w.transactions.size(); ++t) {
                const auto& tt = r->transactions[t];
                CHECK(tt.index == t);
                std::uint64_t beats = (w.transactions[t].bits + 31) / 32;
                CHECK(tt.end - tt.start >= beats + w.transactions[t].compute_cycles);
                last = std::max(last, tt.end);
                // Session order.
                for (std::size_t u = 0; u < t; ++u) {
                    if (w.transactions[u].session == w.transactions[t].session) {
                        CHECK(r->transactions[u].end <= tt.start);
                    }
                }
            }
            CHECK(r->total_cycles == last);
        }
        // The bus is one resource.
        for (std::size_t a = 0; a < bus.transactions.size(); ++a)
            for (std::size_t b = a + 1; b < bus.transactions.size(); ++b)
                CHECK_FALSE(overlaps(bus.transactions[a], bus.transactions[b]));
        CHECK(xbar.total_cycles <= bus.total_cycles);
    }
}

TEST_CASE("scaling over node counts") {
    TopologyModel base;
    base.width_bits = 64;
    auto rows = sweep_nodes(base, {2, 4, 8, 16}, {TopologyKind::SnoopyBus, TopologyKind::Crossbar},
                            [](std::uint32_t n) { return all_to_one(n, 64); });
    REQUIRE(rows.size() == 8);
    std::vector<std::uint64_t> bus_cycles, xbar_cycles;
    for (const auto& r : rows) {
        double n = r.nodes;
        if (r.kind == TopologyKind::SnoopyBus) {
            CHECK(r.area == doctest::Approx(base.c_node * n + base.c_bus));
            bus_cycles.push_back(r.cycles);
        } else {
            CHECK(r.area == doctest::Approx(base.c_node * n + base.c_link * n * (n - 1) / 2));
            xbar_cycles.push_back(r.cycles);
            CHECK(r.cycles_per_transaction == doctest::Approx(rows[1].cycles_per_transaction));
        }
    }
    CHECK(bus_cycles == std::vector<std::uint64_t>{2, 6, 14, 30});
    CHECK(xbar_cycles == std::vector<std::uint64_t>{1, 1, 1, 1});

    SUBCASE("serial and parallel sweeps agree") {
        auto serial = sweep_nodes(base, {2, 4, 8, 16}, {TopologyKind::SnoopyBus, TopologyKind::Crossbar},
                                  [](std::uint32_t n) { return all_to_one(n, 64); }, Execution::Serial);
        CHECK(to_csv(serial) == to_csv(rows));
    }
}

TEST_CASE("calibration on TC1") {
    TopologyModel bus;
    Calibration c = calibrate(bus);
    CHECK(c.cycles_per_mac == 1.0);
    CHECK(c.reference_cycles == 417);
    CHECK(c.frequency_mhz == doctest::Approx(417 / 0.5371));
    bus.frequency_mhz = c.frequency_mhz;
    CHECK(simulate(bus, cnn_workload(8, 3).workload).latency_us == doctest::Approx(0.5371));
}

TEST_CASE("comparison table and CSV") {
    std::vector<Workload> ws{cnn_workload(8, 3).workload, all_to_one(4)};
    std::vector<TopologyModel> ts{topo(TopologyKind::SnoopyBus, 4), topo(TopologyKind::Crossbar, 4)};
    auto p = compare(ws, ts, Execution::Parallel);
    auto s = compare(ws, ts, Execution::Serial);
    REQUIRE(p.size() == 4);
    CHECK(to_json(p) == to_json(s));
    std::string csv = to_csv(p);
    CHECK(csv.rfind("N,topology,cycles,latency_us,area,leakage\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
    CHECK(parse_workload("all-to-one:bits=64", 4).transactions.size() == 3);
    CHECK(parse_workload("cnn:n=12,k=3", 4).transactions.size() == cnn_workload(12, 3).workload.transactions.size());
    CHECK_THROWS_AS(parse_workload("nonsense", 4), std::invalid_argument);
}
