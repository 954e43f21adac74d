#include "vip/session/lts.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <set>
#include <utility>

namespace vip::session {

namespace {

std::string label_key(const Label& l) {
    return fmt::format("{}{}({}):{}/{}/{}/{}", action_symbol(l.action), l.message, l.width(),
                       static_cast<int>(l.payload.kind), static_cast<int>(l.payload.element),
                       l.payload.length, l.payload.element_length);
}

std::vector<const Edge*> sorted_edges(std::span<const Edge> edges) {
    std::vector<const Edge*> sorted;
    sorted.reserve(edges.size());
    for (const auto& e : edges) sorted.push_back(&e);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Edge* a, const Edge* b) { return a->label < b->label; });
    return sorted;
}

}  // namespace

SessionLts::SessionLts() : out_(1) {}

StateId SessionLts::add_state() {
    out_.emplace_back();
    return static_cast<StateId>(out_.size() - 1);
}

void SessionLts::add_transition(StateId from, Label label, StateId to) {
    if (from >= out_.size() || to >= out_.size()) {
        throw LtsError(fmt::format("transition endpoint out of range ({} -> {})", from, to), from);
    }
    out_[from].push_back(Edge{std::move(label), to});
}

void SessionLts::set_initial(StateId state) {
    if (state >= out_.size()) throw LtsError("initial state out of range", state);
    initial_ = state;
}

std::size_t SessionLts::transition_count() const {
    std::size_t n = 0;
    for (const auto& edges : out_) n += edges.size();
    return n;
}

std::vector<StateId> SessionLts::terminals() const {
    std::vector<StateId> result;
    for (StateId s = 0; s < out_.size(); ++s) {
        if (out_[s].empty()) result.push_back(s);
    }
    return result;
}

std::vector<Transition> SessionLts::transitions() const {
    std::vector<Transition> result;
    for (StateId s = 0; s < out_.size(); ++s) {
        for (const auto& e : out_[s]) result.push_back(Transition{s, e.label, e.target});
    }
    return result;
}

std::vector<Label> SessionLts::actions() const {
    std::vector<Label> labels;
    for (const auto& edges : out_) {
        for (const auto& e : edges) labels.push_back(e.label);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    return labels;
}

void SessionLts::validate(bool require_widths) const {
    if (initial_ >= out_.size()) throw LtsError("initial state out of range", initial_);

    for (StateId s = 0; s < out_.size(); ++s) {
        const auto& edges = out_[s];
        std::set<std::pair<std::string, std::uint32_t>> seen;
        for (const auto& e : edges) {
            if (e.target >= out_.size()) {
                throw LtsError(fmt::format("state s{}: transition target out of range", s), s);
            }
            if (e.label.message.empty()) {
                throw LtsError(fmt::format("state s{}: empty message identifier", s), s);
            }
            if (require_widths && !e.label.payload.annotated()) {
                throw LtsError(fmt::format("state s{}: label {} has no concrete width", s,
                                           to_string(e.label)),
                               s);
            }
            if (polarity(e.label.action) != polarity(edges.front().label.action)) {
                throw LtsError(fmt::format("state s{}: mixed send/receive polarity", s), s);
            }
            if (!seen.emplace(e.label.message, e.label.width()).second) {
                throw LtsError(fmt::format("state s{}: duplicate outgoing label {}", s,
                                           to_string(e.label)),
                               s);
            }
        }
    }

    // Iterative three-colour DFS for cycles.
    enum : std::uint8_t { White, Grey, Black };
    std::vector<std::uint8_t> colour(out_.size(), White);
    for (StateId root = 0; root < out_.size(); ++root) {
        if (colour[root] != White) continue;
        std::vector<std::pair<StateId, std::size_t>> stack{{root, 0}};
        colour[root] = Grey;
        while (!stack.empty()) {
            auto& [s, next] = stack.back();
            if (next < out_[s].size()) {
                StateId t = out_[s][next++].target;
                if (colour[t] == Grey) {
                    throw LtsError(fmt::format("state s{}: cycle detected (recursion unsupported)", t), t);
                }
                if (colour[t] == White) {
                    colour[t] = Grey;
                    stack.emplace_back(t, 0);
                }
            } else {
                colour[s] = Black;
                stack.pop_back();
            }
        }
    }
}

SessionLts SessionLts::canonical() const {
    SessionLts result;
    result.out_.clear();
    std::map<StateId, StateId> renamed;

    auto visit = [&](auto&& self, StateId s) -> StateId {
        if (auto it = renamed.find(s); it != renamed.end()) return it->second;
        StateId id = static_cast<StateId>(result.out_.size());
        renamed.emplace(s, id);
        result.out_.emplace_back();
        for (const Edge* e : sorted_edges(out_[s])) {
            StateId target = self(self, e->target);
            result.out_[id].push_back(Edge{e->label, target});
        }
        return id;
    };
    visit(visit, initial_);
    result.initial_ = 0;
    return result;
}

std::string SessionLts::canonical_key() const {
    SessionLts c = canonical();
    std::string key;
    for (StateId s = 0; s < c.out_.size(); ++s) {
        key += fmt::format("{}[", s);
        for (const auto& e : c.out_[s]) key += fmt::format("{}>{};", label_key(e.label), e.target);
        key += ']';
    }
    return key;
}

bool SessionLts::operator==(const SessionLts& other) const {
    SessionLts a = canonical();
    SessionLts b = other.canonical();
    if (a.out_.size() != b.out_.size()) return false;
    for (StateId s = 0; s < a.out_.size(); ++s) {
        if (a.out_[s].size() != b.out_[s].size()) return false;
        for (std::size_t i = 0; i < a.out_[s].size(); ++i) {
            if (a.out_[s][i].target != b.out_[s][i].target) return false;
            if (!(a.out_[s][i].label == b.out_[s][i].label)) return false;
        }
    }
    return true;
}

SessionLts linear(std::span<const Label> labels) {
    SessionLts lts;
    StateId at = lts.initial();
    for (const auto& l : labels) {
        StateId next = lts.add_state();
        lts.add_transition(at, l, next);
        at = next;
    }
    return lts;
}

std::vector<std::vector<Label>> enumerate_traces(const SessionLts& session) {
    std::vector<std::vector<Label>> traces;
    std::vector<Label> prefix;
    auto walk = [&](auto&& self, StateId s) -> void {
        auto edges = session.outgoing(s);
        if (edges.empty()) {
            traces.push_back(prefix);
            return;
        }
        for (const auto& e : edges) {
            prefix.push_back(e.label);
            self(self, e.target);
            prefix.pop_back();
        }
    };
    walk(walk, session.initial());
    std::sort(traces.begin(), traces.end());
    return traces;
}

}  // namespace vip::session
