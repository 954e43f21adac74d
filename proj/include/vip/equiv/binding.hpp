#pragma once

#include "vip/equiv/verdict.hpp"
#include "vip/hw/candidates.hpp"

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace vip::equiv {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Checks a software session, already in the hardware's polarity, against
/// the candidate protocols of one IP. Messages in `control_filter` are
/// pruned from every candidate first. The first Equivalent candidate in
/// canonical order wins; otherwise the result is NotEquivalent with the
/// least witness over all candidates. Candidates are evaluated
/// concurrently under Execution::Parallel; the selection does not depend on
/// completion order. Throws ConfigError for an empty candidate set.
EquivalenceVerdict check_binding(const session::SessionLts& software,
                                 const std::vector<hw::CandidateProtocol>& candidates,
                                 const std::set<std::string>& control_filter = {},
                                 Execution execution = Execution::Parallel);

}  // namespace vip::equiv
