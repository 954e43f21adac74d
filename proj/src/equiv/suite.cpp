#include "vip/equiv/suite.hpp"

#include "vip/equiv/oracle.hpp"
#include "vip/session/ops.hpp"

#include <chrono>
#include <map>
#include <stdexcept>

namespace vip::equiv {

std::string_view to_string(Classification c) {
    switch (c) {
    case Classification::TruePositive: return "TP";
    case Classification::TrueNegative: return "TN";
    case Classification::FalsePositive: return "FP";
    case Classification::FalseNegative: return "FN";
    }
    return "TP";
}

Classification classify(Expected expected, Outcome outcome) {
    bool truth = expected != Expected::NonEq;
    bool positive = outcome == Outcome::Equivalent;
    if (truth) return positive ? Classification::TruePositive : Classification::FalseNegative;
    return positive ? Classification::FalsePositive : Classification::TrueNegative;
}

std::uint64_t scenario_seed(std::uint64_t suite_seed, std::size_t index) {
    std::uint64_t z = suite_seed * 0x100000001b3ULL + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::pair<std::uint32_t, Mutation> scenario_cell(const SuiteConfig& c, std::size_t index) {
    if (c.min_length > c.max_length || c.mutations.empty()) {
        throw std::invalid_argument("suite needs at least one length and one mutation");
    }
    const std::size_t lengths = c.max_length - c.min_length + 1;
    const std::size_t cell = index % (lengths * c.mutations.size());
    return {c.min_length + static_cast<std::uint32_t>(cell / c.mutations.size()),
            c.mutations[cell % c.mutations.size()]};
}

ScenarioResult run_scenario(const Scenario& sc) {
    ScenarioResult r;
    r.seed = sc.seed;
    r.length = sc.length;
    r.mutation = sc.mutation;
    r.expected = sc.expected;
    r.transitions = std::max(sc.left.transition_count(), sc.right.transition_count());

    auto start = std::chrono::steady_clock::now();
    r.verdict = equivalent(sc.left, sc.right);
    r.check_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    r.verdict.timing_ms = r.check_ms;
    r.classification = classify(sc.expected, r.verdict.outcome);

    if (sc.mutation == Mutation::ControlSignal) {
        auto pruned = session::prune_communication(sc.right, {"start", "done"});
        r.filtered = equivalent(sc.left, pruned).outcome;
    }
    if (sc.left.transition_count() <= oracle_transition_limit &&
        sc.right.transition_count() <= oracle_transition_limit) {
        r.oracle = oracle_equivalent(sc.left, sc.right);
    }
    return r;
}

SuiteReport run_suite(const SuiteConfig& config, Execution execution) {
    SuiteReport report;
    report.config = config;
    report.results.resize(config.count);
    auto one = [&](std::size_t i) {
        auto [length, mutation] = scenario_cell(config, i);
        Scenario sc = generate_scenario(scenario_seed(config.seed, i), length, mutation, config.beat_split);
        ScenarioResult r = run_scenario(sc);
        r.index = i;
        report.results[i] = std::move(r);
    };
    const auto n = static_cast<std::ptrdiff_t>(config.count);
    if (execution == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (std::ptrdiff_t i = 0; i < n; ++i) one(static_cast<std::size_t>(i));
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) one(static_cast<std::size_t>(i));
    }

    for (const auto& r : report.results) {
        ++report.counts[static_cast<std::size_t>(r.classification)];
        if (r.oracle) {
            ++report.oracle_checked;
            if (!r.oracle_agrees()) ++report.oracle_disagreements;
        }
        if (r.filtered && *r.filtered == Outcome::Equivalent) ++report.filtered_equivalent;
    }
    return report;
}

nlohmann::json to_json(const ScenarioResult& r) {
    nlohmann::json out = {{"index", r.index},
                          {"seed", r.seed},
                          {"length", r.length},
                          {"mutation", std::string(to_string(r.mutation))},
                          {"expected", std::string(to_string(r.expected))},
                          {"transitions", r.transitions},
                          {"classification", std::string(to_string(r.classification))},
                          {"report", to_json(r.verdict)}};
    if (r.filtered) out["filtered_verdict"] = std::string(to_string(*r.filtered));
    if (r.oracle) out["oracle_equivalent"] = *r.oracle;
    return out;
}

nlohmann::json summary_json(const SuiteReport& report) {
    const auto& c = report.config;
    nlohmann::json mutations = nlohmann::json::array();
    for (Mutation m : c.mutations) mutations.push_back(std::string(to_string(m)));

    std::map<std::pair<std::uint32_t, std::string>, std::array<std::size_t, 4>> cells;
    for (const auto& r : report.results) {
        ++cells[{r.length, std::string(to_string(r.mutation))}][static_cast<std::size_t>(r.classification)];
    }
    nlohmann::json cell_rows = nlohmann::json::array();
    for (const auto& [key, n] : cells) {
        cell_rows.push_back({{"length", key.first},
                             {"mutation", key.second},
                             {"TP", n[0]},
                             {"TN", n[1]},
                             {"FP", n[2]},
                             {"FN", n[3]}});
    }
    const std::size_t lengths = c.max_length - c.min_length + 1;
    return {{"header",
             {{"seed", c.seed},
              {"count", c.count},
              {"lengths", {c.min_length, c.max_length}},
              {"mutations", mutations},
              {"beat_split", c.beat_split},
              {"cell_assignment", "round-robin over (length, mutation)"},
              {"cells", lengths * c.mutations.size()}}},
            {"totals",
             {{"TP", report.counts[0]},
              {"TN", report.counts[1]},
              {"FP", report.counts[2]},
              {"FN", report.counts[3]}}},
            {"control_signal_equivalent_with_filter", report.filtered_equivalent},
            {"oracle", {{"checked", report.oracle_checked}, {"disagreements", report.oracle_disagreements}}},
            {"cells", cell_rows}};
}

}  // namespace vip::equiv
