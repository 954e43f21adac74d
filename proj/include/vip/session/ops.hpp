#pragma once

#include "vip/session/lts.hpp"

#include <cstddef>
#include <set>
#include <string>

namespace vip::session {

/// Mirror view: Send<->Recv and Choose<->Offer, shape and payloads unchanged.
SessionLts dual(const SessionLts& session);

/// Contracts every transition whose message is in `internal_labels`,
/// merging its endpoints. Throws LtsError when the contraction would
/// produce a cycle, a mixed-polarity state, clashing labels, or a state
/// that is both terminal and non-terminal.
SessionLts prune_communication(const SessionLts& session,
                               const std::set<std::string>& internal_labels);

struct FoldResult {
    SessionLts session;
    /// Number of runs that were merged into a single transition.
    std::size_t folds = 0;
};

/// Merges every maximal linear run of transitions with the same action,
/// message and element kind into one transition whose width is the sum of
/// the run. Intermediate states must have in-degree and out-degree one.
FoldResult fold_widths_counted(const SessionLts& session);
SessionLts fold_widths(const SessionLts& session);

}  // namespace vip::session
