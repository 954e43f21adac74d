#pragma once

#include "vip/equiv/scenarios.hpp"
#include "vip/equiv/verdict.hpp"

#include <json.hpp>

#include <array>
#include <optional>
#include <vector>

namespace vip::equiv {

enum class Classification { TruePositive, TrueNegative, FalsePositive, FalseNegative };

std::string_view to_string(Classification c);

/// Positive = the checker reported Equivalent. Ground truth is "equivalent"
/// for eq and eq-with-filter scenarios.
Classification classify(Expected expected, Outcome outcome);

struct SuiteConfig {
    std::uint64_t seed = 1;
    std::size_t count = 10000;
    std::uint32_t min_length = min_scenario_length;
    std::uint32_t max_length = max_scenario_length;
    std::vector<Mutation> mutations{std::begin(all_mutations), std::end(all_mutations)};
    bool beat_split = true;
};

struct ScenarioResult {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    std::uint32_t length = 0;
    Mutation mutation = Mutation::None;
    Expected expected = Expected::Eq;
    std::size_t transitions = 0;
    EquivalenceVerdict verdict;
    Classification classification = Classification::TruePositive;
    /// control-signal scenarios: the verdict with {start, done} filtered.
    std::optional<Outcome> filtered;
    /// Oracle verdict when both sides are within its size bound.
    std::optional<bool> oracle;
    double check_ms = 0.0;

    bool oracle_agrees() const { return !oracle || *oracle == verdict.equivalent(); }
};

struct SuiteReport {
    SuiteConfig config;
    std::vector<ScenarioResult> results;
    /// Indexed by Classification.
    std::array<std::size_t, 4> counts{};
    std::size_t oracle_checked = 0;
    std::size_t oracle_disagreements = 0;
    std::size_t filtered_equivalent = 0;
};

/// Seed of the i-th scenario of a suite.
std::uint64_t scenario_seed(std::uint64_t suite_seed, std::size_t index);

/// Scenario i belongs to cell i mod (#lengths x #mutations), cells ordered
/// by (length, mutation); the total is spread round-robin.
std::pair<std::uint32_t, Mutation> scenario_cell(const SuiteConfig& config, std::size_t index);

ScenarioResult run_scenario(const Scenario& scenario);

/// Generates and checks every scenario. Results are in index order under
/// both execution modes.
SuiteReport run_suite(const SuiteConfig& config, Execution execution = Execution::Parallel);

nlohmann::json to_json(const ScenarioResult& result);
/// Totals per classification and per (length, mutation) cell.
nlohmann::json summary_json(const SuiteReport& report);

}  // namespace vip::equiv
