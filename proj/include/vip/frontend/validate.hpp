#pragma once

#include "vip/frontend/object_graph.hpp"

#include <string_view>
#include <vector>

namespace vip::frontend {

/// Reports every construct that has no fixed-size sequential hardware
/// meaning. The list is sorted by (line, column, kind) and free of
/// duplicates; it is empty iff the program is admissible.
std::vector<ConstraintViolation> validate_constraints(const ObjectGraph& graph,
                                                      std::string_view source);

std::vector<ConstraintViolation> validate_constraints(const ObjectGraph& graph,
                                                      const Program& program);

}  // namespace vip::frontend
