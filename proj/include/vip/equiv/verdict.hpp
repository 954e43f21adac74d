#pragma once

#include "vip/execution.hpp"
#include "vip/session/lts.hpp"

#include <json.hpp>

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace vip::equiv {

enum class Outcome { Equivalent, SubtypeOnly, NotEquivalent };

std::string_view to_string(Outcome outcome);

inline constexpr std::string_view hardware_sub_software = "hardware<:software";
inline constexpr std::string_view software_sub_hardware = "software<:hardware";

struct EquivalenceVerdict {
    Outcome outcome = Outcome::NotEquivalent;
    /// For SubtypeOnly: the direction that holds.
    std::string direction;
    /// Failing path; empty iff Equivalent.
    std::vector<session::Label> witness;
    /// Candidate id that matched (Equivalent from check_binding).
    std::string candidate;
    /// Runs merged by width folding, both sides together.
    std::size_t folds = 0;
    /// Control-signal filter that was applied, if any.
    std::set<std::string> filtered;
    double timing_ms = 0.0;

    bool equivalent() const { return outcome == Outcome::Equivalent; }
};

/// Folds both sides, then checks subtyping in both directions.
EquivalenceVerdict equivalent(const session::SessionLts& software,
                              const session::SessionLts& hardware);

/// `{verdict, direction?, witness:[labels], candidate?, folds, filtered?, timing_ms}`.
nlohmann::json to_json(const EquivalenceVerdict& verdict);

using vip::Execution;

}  // namespace vip::equiv
