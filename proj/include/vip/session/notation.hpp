#pragma once

#include "vip/session/lts.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace vip::session {

class NotationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses the compact text form used in fixtures and on the command line:
///
///   session := "end" | step | "{" step ("," step)* "}"
///   step    := label [ "." session ]
///   label   := ("!" | "?" | "+" | "&") NAME "(" WIDTH ")"
///
/// e.g. `{?A(8).!B(8).!C(8), ?E(8)}`. Payloads are integers (boolean at
/// width 1).
SessionLts parse_session(std::string_view text);

/// Inverse of parse_session on the tree unfolding of `session`.
std::string to_notation(const SessionLts& session);

}  // namespace vip::session
