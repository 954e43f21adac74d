#pragma once

#include "vip/session/lts.hpp"

#include <vector>

namespace vip::equiv {

struct SubtypeResult {
    bool holds = false;
    /// Lexicographically least label path on which the relation fails;
    /// empty when it holds.
    std::vector<session::Label> witness;

    explicit operator bool() const { return holds; }
};

/// `sub <: sup` by simulation. Labels are matched on (message, width)
/// within a polarity, so `?A(8)` and `&A(8)` are the same input.
///   terminal     : both sides terminal
///   output state : labels(sub) subset of labels(sup), continuations related
///   input state  : labels(sub) superset of labels(sup), related on sup's labels
SubtypeResult subtype(const session::SessionLts& sub, const session::SessionLts& sup);

/// Lexicographic order on label sequences (a proper prefix sorts first).
bool witness_less(const std::vector<session::Label>& a, const std::vector<session::Label>& b);

}  // namespace vip::equiv
