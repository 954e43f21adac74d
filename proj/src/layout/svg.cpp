#include "vip/layout/svg.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace vip::layout {

namespace {

std::string escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_svg(const Floorplan& plan) {
    double w = plan.box_width, h = plan.box_height;
    for (const auto& p : plan.placements) {
        w = std::max(w, p.x + p.width + plan.spacing);
        h = std::max(h, p.y + p.height + plan.spacing);
    }
    std::string out = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:g}\" height=\"{:g}\" viewBox=\"0 0 {:g} {:g}\">\n",
        w, h, w, h);
    out += "<style>.block{fill:#cfe3f7;stroke:#1f4e79}.out-of-box{fill:#f7cfcf;stroke:#9c1c1c}"
           ".box{fill:none;stroke:#000;stroke-dasharray:4 2}</style>\n";
    out += fmt::format("<rect class=\"box\" x=\"0\" y=\"0\" width=\"{:g}\" height=\"{:g}\"/>\n",
                       plan.box_width, plan.box_height);
    for (const auto& p : plan.placements) {
        out += fmt::format(
            "<g data-block=\"{}\" data-ip=\"{}\" data-variant=\"{}\">"
            "<rect class=\"{}\" x=\"{:g}\" y=\"{:g}\" width=\"{:g}\" height=\"{:g}\"/>"
            "<text x=\"{:g}\" y=\"{:g}\" font-size=\"{:g}\">{} {}/{}</text></g>\n",
            escape(p.block), escape(p.ip), escape(p.variant), p.inside ? "block" : "block out-of-box", p.x,
            p.y, p.width, p.height, p.x + p.width / 20, p.y + p.height / 2,
            std::max(1.0, std::min(p.width, p.height) / 10), escape(p.block), escape(p.ip), escape(p.variant));
    }
    out += "</svg>\n";
    return out;
}

}  // namespace vip::layout
