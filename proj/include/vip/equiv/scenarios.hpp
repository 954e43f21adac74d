#pragma once

#include "vip/session/lts.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace vip::equiv {

enum class Mutation { None, Ordering, MessageIdentity, Branching, BitWidth, ControlSignal };
enum class Expected { Eq, NonEq, EqWithFilter };

inline constexpr Mutation all_mutations[] = {Mutation::None,      Mutation::Ordering,
                                             Mutation::MessageIdentity, Mutation::Branching,
                                             Mutation::BitWidth,  Mutation::ControlSignal};

std::string_view to_string(Mutation m);
std::string_view to_string(Expected e);
std::optional<Mutation> parse_mutation(std::string_view text);

inline constexpr std::uint32_t min_scenario_length = 3;
inline constexpr std::uint32_t max_scenario_length = 20;

struct Scenario {
    std::uint64_t seed = 0;
    std::uint32_t length = 0;
    Mutation mutation = Mutation::None;
    Expected expected = Expected::Eq;
    /// Software side.
    session::SessionLts left;
    /// Hardware side, possibly with one message split into beats.
    session::SessionLts right;
    /// Index of the mutated label in the software sequence.
    std::optional<std::uint32_t> defect;
    /// Index of the software label the hardware side carries as beats.
    std::optional<std::uint32_t> split;
};

/// Deterministic for a fixed (seed, length, mutation). The software side is
/// a linear session of `length` labels over messages m0, m1, ... with widths
/// in {8, 16, 32} and no two adjacent labels sharing (action, message), so
/// it never folds. Each mutation introduces exactly one defect on the
/// hardware side:
///   ordering          two adjacent labels swapped
///   message-identity  one message renamed
///   branching         one extra same-action alternative to a fresh message
///   bit-width         one width changed (8->16, 16->8, 32->16)
///   control-signal    ?start(1) prefix and !done(1) suffix
/// With `beat_split`, one label away from the defect is also carried as
/// equal beats, which folding must undo. Throws std::invalid_argument for a
/// length outside 3..20.
Scenario generate_scenario(std::uint64_t seed, std::uint32_t length, Mutation mutation,
                           bool beat_split = true);

/// Splits the `index`-th label of a linear session into `beats` equal parts.
session::SessionLts beat_split(const session::SessionLts& linear_session, std::size_t index,
                               std::uint32_t beats);

}  // namespace vip::equiv
