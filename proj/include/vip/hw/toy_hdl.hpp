#pragma once

#include "vip/hw/fsm.hpp"

#include <string_view>

namespace vip::hw {

/// Parses the toy HDL-FSM text form:
///
///   ip NAME
///   in NAME WIDTH
///   out NAME WIDTH
///   reset STATE            (defaults to the first state)
///   state ID { stmt* }
///
///   stmt := P.valid = 1 | P.data = MSG | goto S | if (P.valid) goto S
///         | case (P.data) { L: goto S ... } | branch { goto A | goto B ... }
///
/// Semicolons between statements are optional. `#` and `//` start comments.
/// The result is validated exactly like a parsed interchange document.
HwFsm parse_toy_hdl(std::string_view text);

/// Renders `fsm` back to toy HDL.
std::string to_toy_hdl(const HwFsm& fsm);

}  // namespace vip::hw
