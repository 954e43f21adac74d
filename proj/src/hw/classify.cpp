#include "vip/hw/classify.hpp"

#include <fmt/format.h>

namespace vip::hw {

using session::ActionKind;

session::Label StateTag::label() const {
    return session::Label{action, message, session::PayloadType::port(width)};
}

LabeledFsm classify_actions(const HwFsm& fsm) {
    LabeledFsm out;
    out.fsm = fsm;
    for (const auto& s : fsm.states) {
        if (pattern_count(s) > 1) {
            throw FsmError(fmt::format("cannot classify state '{}': multiple session patterns", s.id));
        }
        auto port = [&](const std::string& name) -> const Port& {
            const Port* p = fsm.find_port(name);
            if (!p) throw FsmError(fmt::format("state '{}' uses undeclared port '{}'", s.id, name));
            return *p;
        };
        std::optional<StateTag> tag;
        if (!s.asserts.empty()) {
            const Port& p = port(s.asserts.front());
            tag = StateTag{ActionKind::Send, p.name, s.message.empty() ? p.name : s.message, p.width};
        } else if (!s.guards.empty()) {
            const Port& p = port(s.guards.front());
            tag = StateTag{ActionKind::Recv, p.name, s.message.empty() ? p.name : s.message, p.width};
        } else if (s.branch == BranchKind::InputData) {
            const Port& p = port(s.branch_port);
            tag = StateTag{ActionKind::Offer, p.name, {}, p.width};
        } else if (s.branch == BranchKind::Internal) {
            tag = StateTag{ActionKind::Choose, {}, {}, 0};
        }
        out.tags.push_back(std::move(tag));
    }
    return out;
}

}  // namespace vip::hw
