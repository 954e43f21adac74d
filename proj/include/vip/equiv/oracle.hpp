#pragma once

#include "vip/session/lts.hpp"

#include <cstddef>

namespace vip::equiv {

/// Largest input (in transitions, before folding) the oracle accepts.
inline constexpr std::size_t oracle_transition_limit = 14;

/// Brute-force reference for `subtype`: starts from the full relation over
/// all state pairs and removes violating pairs until nothing changes.
/// Throws std::invalid_argument above the size bound.
bool oracle_subtype(const session::SessionLts& sub, const session::SessionLts& sup);

/// Both directions after folding both sides.
bool oracle_equivalent(const session::SessionLts& a, const session::SessionLts& b);

}  // namespace vip::equiv
