#pragma once

#include "vip/hw/classify.hpp"
#include "vip/session/lts.hpp"

#include <string>
#include <vector>

namespace vip::hw {

struct CandidateProtocol {
    /// `ip/k` for the unrolling of k iterations.
    std::string id;
    std::string ip;
    session::SessionLts session;
    /// FSM paths covered, as `S0>S1>...`, sorted.
    std::vector<std::string> paths;
};

/// Unrolls the machine from reset. Reaching reset again closes an
/// iteration; a state without successors ends the session. Pass-through
/// states and their stall self-loops are elided, Offer and Choose states
/// become branching nodes. One candidate per iteration count 1..K,
/// deduplicated by canonical form and sorted canonically.
///
/// Throws FsmError("unsupported recursion ...") for a cycle that avoids
/// reset, and for an internal-branch arm that performs no send before its
/// next input.
std::vector<CandidateProtocol> extract_candidates(const LabeledFsm& fsm,
                                                  std::size_t max_iterations = 1);

}  // namespace vip::hw
