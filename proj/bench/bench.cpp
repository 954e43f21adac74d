// Serial reference vs OpenMP kernels: scenario suite, candidate binding
// and topology sweeps.

#include "vip/equiv/binding.hpp"
#include "vip/equiv/suite.hpp"
#include "vip/net/sweep.hpp"

#include <benchmark/benchmark.h>

using namespace vip;

namespace {

Execution mode(const benchmark::State& state) {
    return state.range(0) ? Execution::Parallel : Execution::Serial;
}

void BM_suite(benchmark::State& state) {
    equiv::SuiteConfig cfg;
    cfg.count = 2000;
    for (auto _ : state) {
        auto r = equiv::run_suite(cfg, mode(state));
        benchmark::DoNotOptimize(r.counts);
    }
}

void BM_binding(benchmark::State& state) {
    // Many linear candidates, only the last matches.
    std::vector<hw::CandidateProtocol> candidates;
    auto sc = equiv::generate_scenario(7, 20, equiv::Mutation::None, false);
    for (int i = 0; i < 64; ++i) {
        auto wrong = equiv::generate_scenario(100 + i, 20, equiv::Mutation::MessageIdentity, false);
        candidates.push_back({"ip/" + std::to_string(i), "ip", wrong.right, {}});
    }
    candidates.push_back({"ip/zz", "ip", sc.right, {}});
    for (auto _ : state) {
        auto v = equiv::check_binding(sc.left, candidates, {}, mode(state));
        benchmark::DoNotOptimize(v.outcome);
    }
}

void BM_sweep(benchmark::State& state) {
    net::TopologyModel base;
    std::vector<std::uint32_t> ns;
    for (std::uint32_t n = 2; n <= 64; n *= 2) ns.push_back(n);
    for (auto _ : state) {
        auto rows = net::sweep_nodes(base, ns, {net::TopologyKind::SnoopyBus, net::TopologyKind::Crossbar},
                                     [](std::uint32_t n) { return net::all_to_one(n, 4096); }, mode(state));
        benchmark::DoNotOptimize(rows.data());
    }
}

}  // namespace

BENCHMARK(BM_suite)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_binding)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_sweep)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
