#include "vip/equiv/verdict.hpp"

#include "vip/equiv/subtype.hpp"
#include "vip/session/ops.hpp"

namespace vip::equiv {

std::string_view to_string(Outcome outcome) {
    switch (outcome) {
    case Outcome::Equivalent: return "equivalent";
    case Outcome::SubtypeOnly: return "subtype-only";
    case Outcome::NotEquivalent: return "not-equivalent";
    }
    return "not-equivalent";
}

EquivalenceVerdict equivalent(const session::SessionLts& software,
                              const session::SessionLts& hardware) {
    auto sw = session::fold_widths_counted(software);
    auto hw = session::fold_widths_counted(hardware);
    EquivalenceVerdict v;
    v.folds = sw.folds + hw.folds;

    SubtypeResult hs = subtype(hw.session, sw.session);
    SubtypeResult sh = subtype(sw.session, hw.session);
    if (hs.holds && sh.holds) {
        v.outcome = Outcome::Equivalent;
    } else if (hs.holds) {
        v.outcome = Outcome::SubtypeOnly;
        v.direction = hardware_sub_software;
        v.witness = std::move(sh.witness);
    } else if (sh.holds) {
        v.outcome = Outcome::SubtypeOnly;
        v.direction = software_sub_hardware;
        v.witness = std::move(hs.witness);
    } else {
        v.outcome = Outcome::NotEquivalent;
        v.witness = witness_less(sh.witness, hs.witness) ? std::move(sh.witness) : std::move(hs.witness);
    }
    return v;
}

nlohmann::json to_json(const EquivalenceVerdict& v) {
    nlohmann::json witness = nlohmann::json::array();
    for (const auto& l : v.witness) witness.push_back(session::to_string(l));
    nlohmann::json out = {{"verdict", std::string(to_string(v.outcome))},
                          {"witness", witness},
                          {"folds", v.folds},
                          {"timing_ms", v.timing_ms}};
    if (!v.direction.empty()) out["direction"] = v.direction;
    if (!v.candidate.empty()) out["candidate"] = v.candidate;
    if (!v.filtered.empty()) out["filtered"] = v.filtered;
    return out;
}

}  // namespace vip::equiv
