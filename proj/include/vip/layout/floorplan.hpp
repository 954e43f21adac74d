#pragma once

#include "vip/layout/templates.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vip::layout {

struct Selection {
    std::string ip;
    std::string variant;

    bool operator==(const Selection&) const = default;
};

/// Block name (the software object) -> chosen template variant.
using Selections = std::map<std::string, Selection>;

struct Placement {
    std::string block;
    std::string ip;
    std::string variant;
    double x = 0.0;
    double y = 0.0;
    double width = 0.0;
    double height = 0.0;
    /// Block plus its spacing channel lies inside the bounding box.
    bool inside = true;

    bool operator==(const Placement&) const = default;
};

struct Floorplan {
    double box_width = 0.0;
    double box_height = 0.0;
    double spacing = 0.0;
    std::vector<Placement> placements;
    bool fit = true;
    /// Placed area inside the box over box area.
    double utilization = 0.0;

    bool operator==(const Floorplan&) const = default;
};

/// Shelf packing. Blocks are sorted by height descending, then name; each
/// reserves a `spacing` channel to its right and below. Shelves fill left to
/// right from the origin and a block that would cross the right edge opens
/// a new shelf. Throws TemplateError for an unknown variant.
Floorplan compose(const TemplateLibrary& library, const Selections& selections, double box_width,
                  double box_height, double spacing);

struct PlanMetrics {
    double area = 0.0;
    double leakage = 0.0;
    /// System frequency bound: the slowest selected variant (0 if none).
    double min_frequency = 0.0;
};

PlanMetrics metrics(const TemplateLibrary& library, const Selections& selections);

struct HistoryEntry {
    std::string block;
    std::string from;
    std::string to;

    bool operator==(const HistoryEntry&) const = default;
};

struct PlanState {
    Selections selections;
    double box_width = 0.0;
    double box_height = 0.0;
    double spacing = 0.0;
    Floorplan plan;
    std::vector<HistoryEntry> history;
};

struct Deltas {
    double area = 0.0;
    double leakage = 0.0;
    double min_frequency = 0.0;
    bool fit_before = true;
    bool fit_after = true;
};

struct OptResult {
    PlanState state;
    Deltas deltas;
};

PlanState make_plan(const TemplateLibrary& library, Selections selections, double box_width,
                    double box_height, double spacing);

/// Swaps the variant of block `target` (or of every block whose IP is
/// `target` when no block has that name) and re-composes. Throws
/// TemplateError for an unknown target or variant.
OptResult opt_select(const TemplateLibrary& library, const PlanState& state,
                     const std::string& target, const std::string& variant);

nlohmann::json to_json(const Floorplan& plan);
nlohmann::json to_json(const Deltas& deltas);

}  // namespace vip::layout
