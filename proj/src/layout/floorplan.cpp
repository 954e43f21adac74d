#include "vip/layout/floorplan.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <limits>

namespace vip::layout {

namespace {

const TemplateVariant& variant_of(const TemplateLibrary& lib, const std::string& block, const Selection& s) {
    const TemplateVariant* v = lib.find(s.ip, s.variant);
    if (!v) {
        throw TemplateError(fmt::format("block '{}' selects unknown variant '{}/{}'", block, s.ip, s.variant));
    }
    return *v;
}

double clipped(double lo, double len, double limit) {
    return std::max(0.0, std::min(lo + len, limit) - std::max(lo, 0.0));
}

}  // namespace

Floorplan compose(const TemplateLibrary& lib, const Selections& selections, double box_width,
                  double box_height, double spacing) {
    if (!(box_width > 0) || !(box_height > 0) || spacing < 0) {
        throw TemplateError("bounding box must be positive and spacing non-negative");
    }
    struct Item {
        std::string block;
        const Selection* sel;
        const TemplateVariant* v;
    };
    std::vector<Item> items;
    for (const auto& [block, sel] : selections) items.push_back({block, &sel, &variant_of(lib, block, sel)});
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        if (a.v->height_um != b.v->height_um) return a.v->height_um > b.v->height_um;
        return a.block < b.block;
    });

    Floorplan plan;
    plan.box_width = box_width;
    plan.box_height = box_height;
    plan.spacing = spacing;
    double x = 0, y = 0, shelf = 0, placed = 0;
    for (const auto& it : items) {
        const double fw = it.v->width_um + spacing;
        const double fh = it.v->height_um + spacing;
        if (x > 0 && x + fw > box_width) {
            y += shelf;
            x = 0;
            shelf = 0;
        }
        Placement p{it.block, it.sel->ip, it.sel->variant, x, y, it.v->width_um, it.v->height_um, true};
        p.inside = x + fw <= box_width && y + fh <= box_height;
        plan.fit = plan.fit && p.inside;
        placed += clipped(x, p.width, box_width) * clipped(y, p.height, box_height);
        plan.placements.push_back(std::move(p));
        x += fw;
        shelf = std::max(shelf, fh);
    }
    plan.utilization = placed / (box_width * box_height);
    return plan;
}

PlanMetrics metrics(const TemplateLibrary& lib, const Selections& selections) {
    PlanMetrics m;
    double fmin = std::numeric_limits<double>::infinity();
    for (const auto& [block, sel] : selections) {
        const TemplateVariant& v = variant_of(lib, block, sel);
        m.area += v.area();
        m.leakage += v.leakage_mw;
        fmin = std::min(fmin, v.freq_mhz);
    }
    m.min_frequency = selections.empty() ? 0.0 : fmin;
    return m;
}

PlanState make_plan(const TemplateLibrary& lib, Selections selections, double box_width,
                    double box_height, double spacing) {
    PlanState s;
    s.plan = compose(lib, selections, box_width, box_height, spacing);
    s.selections = std::move(selections);
    s.box_width = box_width;
    s.box_height = box_height;
    s.spacing = spacing;
    return s;
}

OptResult opt_select(const TemplateLibrary& lib, const PlanState& state, const std::string& target,
                     const std::string& variant) {
    std::vector<std::string> blocks;
    if (state.selections.count(target)) {
        blocks.push_back(target);
    } else {
        for (const auto& [block, sel] : state.selections) {
            if (sel.ip == target) blocks.push_back(block);
        }
    }
    if (blocks.empty()) throw TemplateError(fmt::format("no block or IP named '{}' in the plan", target));

    OptResult out;
    out.state = state;
    for (const auto& b : blocks) {
        Selection& sel = out.state.selections.at(b);
        if (!lib.find(sel.ip, variant)) {
            throw TemplateError(fmt::format("IP '{}' has no variant '{}'", sel.ip, variant));
        }
        out.state.history.push_back({b, sel.variant, variant});
        sel.variant = variant;
    }
    out.state.plan = compose(lib, out.state.selections, state.box_width, state.box_height, state.spacing);

    PlanMetrics before = metrics(lib, state.selections);
    PlanMetrics after = metrics(lib, out.state.selections);
    out.deltas = {after.area - before.area, after.leakage - before.leakage,
                  after.min_frequency - before.min_frequency, state.plan.fit, out.state.plan.fit};
    return out;
}

nlohmann::json to_json(const Floorplan& plan) {
    nlohmann::json placements = nlohmann::json::array();
    for (const auto& p : plan.placements) {
        placements.push_back({{"block", p.block},
                              {"ip", p.ip},
                              {"variant", p.variant},
                              {"x", p.x},
                              {"y", p.y},
                              {"width", p.width},
                              {"height", p.height},
                              {"inside", p.inside}});
    }
    return {{"box", {{"width", plan.box_width}, {"height", plan.box_height}}},
            {"spacing", plan.spacing},
            {"placements", placements},
            {"fit", plan.fit},
            {"utilization", plan.utilization}};
}

nlohmann::json to_json(const Deltas& d) {
    return {{"area", d.area},
            {"leakage", d.leakage},
            {"min_frequency", d.min_frequency},
            {"fit_before", d.fit_before},
            {"fit_after", d.fit_after}};
}

}  // namespace vip::layout
