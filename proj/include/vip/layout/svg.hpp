#pragma once

#include "vip/layout/floorplan.hpp"

#include <string>

namespace vip::layout {

/// Deterministic SVG: a dashed bounding box and one `<rect>` per placement,
/// class "block" or "block out-of-box". Coordinates are in micrometres.
std::string render_svg(const Floorplan& plan);

}  // namespace vip::layout
