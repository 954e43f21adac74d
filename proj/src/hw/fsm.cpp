#include "vip/hw/fsm.hpp"

#include <fmt/format.h>

#include <set>

namespace vip::hw {

std::string_view to_string(BranchKind kind) {
    switch (kind) {
    case BranchKind::None: return "none";
    case BranchKind::Internal: return "internal";
    case BranchKind::InputData: return "input-data";
    }
    return "none";
}

const Port* HwFsm::find_port(std::string_view name) const {
    for (const auto& p : ports) {
        if (p.name == name) return &p;
    }
    return nullptr;
}

const FsmState* HwFsm::find_state(std::string_view id) const {
    for (const auto& s : states) {
        if (s.id == id) return &s;
    }
    return nullptr;
}

std::size_t HwFsm::index_of(std::string_view id) const {
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (states[i].id == id) return i;
    }
    throw FsmError(fmt::format("dangling transition to unknown state '{}'", id));
}

std::vector<FsmTransition> HwFsm::transitions() const {
    std::vector<FsmTransition> out;
    for (const auto& s : states) {
        if (!s.next.empty()) {
            std::string guard = s.guards.empty() ? "" : s.guards.front() + ".valid";
            out.push_back({s.id, s.next, guard});
        }
        for (const auto& a : s.arms) {
            std::string guard = s.branch == BranchKind::InputData
                                    ? fmt::format("{}.data == {}", s.branch_port, a.cond_label)
                                    : a.cond_label;
            out.push_back({s.id, a.next, guard});
        }
    }
    return out;
}

std::size_t pattern_count(const FsmState& s) {
    return s.asserts.size() + s.guards.size() + (s.branch == BranchKind::None ? 0 : 1);
}

void validate(const HwFsm& fsm) {
    std::set<std::string> port_names;
    for (const auto& p : fsm.ports) {
        if (p.name.empty()) throw FsmError("port without a name");
        if (!port_names.insert(p.name).second) {
            throw FsmError(fmt::format("port '{}' is declared twice", p.name));
        }
        if (p.width < 1) throw FsmError(fmt::format("port '{}' has width < 1", p.name));
    }
    if (fsm.states.empty()) throw FsmError("machine has no states");
    std::set<std::string> ids;
    for (const auto& s : fsm.states) {
        if (s.id.empty()) throw FsmError("state without an id");
        if (!ids.insert(s.id).second) throw FsmError(fmt::format("state '{}' is declared twice", s.id));
    }
    if (!fsm.find_state(fsm.reset)) {
        throw FsmError(fmt::format("reset state '{}' is not declared", fsm.reset));
    }

    auto port = [&](const FsmState& s, const std::string& name, PortDir dir) {
        const Port* p = fsm.find_port(name);
        if (!p) throw FsmError(fmt::format("state '{}' uses undeclared port '{}'", s.id, name));
        if (p->dir != dir) {
            throw FsmError(fmt::format("state '{}' uses port '{}' in the wrong direction", s.id, name));
        }
    };
    auto target = [&](const FsmState& s, const std::string& id) {
        if (!fsm.find_state(id)) {
            throw FsmError(fmt::format("dangling transition from '{}' to '{}'", s.id, id));
        }
    };

    for (const auto& s : fsm.states) {
        if (pattern_count(s) > 1) {
            throw FsmError(fmt::format("state '{}' has multiple session patterns", s.id));
        }
        for (const auto& a : s.asserts) port(s, a, PortDir::Out);
        for (const auto& g : s.guards) port(s, g, PortDir::In);
        if (s.branch == BranchKind::None) {
            if (!s.arms.empty()) throw FsmError(fmt::format("state '{}' has arms but no branch", s.id));
        } else {
            if (s.arms.empty()) throw FsmError(fmt::format("branch in state '{}' has no arms", s.id));
            if (!s.next.empty()) {
                throw FsmError(fmt::format("branch state '{}' also has an unconditional next", s.id));
            }
        }
        if (s.branch == BranchKind::InputData) {
            if (s.branch_port.empty()) {
                throw FsmError(fmt::format("input-data branch in '{}' names no port", s.id));
            }
            port(s, s.branch_port, PortDir::In);
            std::set<std::string> labels;
            for (const auto& a : s.arms) {
                if (!labels.insert(a.cond_label).second) {
                    throw FsmError(fmt::format("state '{}' has two arms labelled '{}'", s.id,
                                               a.cond_label));
                }
            }
        }
        if (!s.next.empty()) target(s, s.next);
        for (const auto& a : s.arms) target(s, a.next);
    }

    std::vector<bool> seen(fsm.states.size(), false);
    std::vector<std::size_t> work{fsm.index_of(fsm.reset)};
    seen[work.front()] = true;
    while (!work.empty()) {
        const FsmState& s = fsm.states[work.back()];
        work.pop_back();
        auto visit = [&](const std::string& id) {
            std::size_t i = fsm.index_of(id);
            if (!seen[i]) {
                seen[i] = true;
                work.push_back(i);
            }
        };
        if (!s.next.empty()) visit(s.next);
        for (const auto& a : s.arms) visit(a.next);
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (!seen[i]) {
            throw FsmError(fmt::format("state '{}' is unreachable from reset", fsm.states[i].id));
        }
    }
}

}  // namespace vip::hw
