#include "vip/session/ops.hpp"

#include <fmt/format.h>

#include <map>
#include <numeric>
#include <tuple>
#include <vector>

namespace vip::session {

SessionLts dual(const SessionLts& session) {
    SessionLts result = session;
    for (StateId s = 0; s < result.state_count(); ++s) {
        for (auto& e : result.mutable_outgoing(s)) e.label.action = dual(e.label.action);
    }
    return result;
}

namespace {

struct DisjointSets {
    std::vector<StateId> parent;
    explicit DisjointSets(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), StateId{0});
    }
    StateId find(StateId s) {
        while (parent[s] != s) {
            parent[s] = parent[parent[s]];
            s = parent[s];
        }
        return s;
    }
    void unite(StateId a, StateId b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (b < a) std::swap(a, b);
        parent[b] = a;
    }
};

}  // namespace

SessionLts prune_communication(const SessionLts& session,
                               const std::set<std::string>& internal_labels) {
    if (internal_labels.empty()) return session;

    const std::size_t n = session.state_count();
    DisjointSets sets(n);
    for (StateId s = 0; s < n; ++s) {
        for (const auto& e : session.outgoing(s)) {
            if (internal_labels.contains(e.label.message)) sets.unite(s, e.target);
        }
    }

    // Collect the surviving edges per class; the representative is the
    // smallest original state id in the class.
    std::map<StateId, std::vector<Edge>> class_edges;
    std::map<StateId, bool> class_has_terminal;
    for (StateId s = 0; s < n; ++s) {
        StateId c = sets.find(s);
        class_edges[c];
        if (session.is_terminal(s)) class_has_terminal[c] = true;
        for (const auto& e : session.outgoing(s)) {
            if (internal_labels.contains(e.label.message)) continue;
            StateId target = sets.find(e.target);
            if (target == c) {
                throw LtsError(fmt::format("pruning state s{} creates a cycle on {}", s,
                                           to_string(e.label)),
                               s);
            }
            auto& edges = class_edges[c];
            bool duplicate = false;
            for (const auto& existing : edges) {
                if (existing.label == e.label && existing.target == target) duplicate = true;
            }
            if (!duplicate) edges.push_back(Edge{e.label, target});
        }
    }

    for (const auto& [c, edges] : class_edges) {
        if (!edges.empty() && class_has_terminal[c]) {
            throw LtsError(fmt::format("pruning merges terminal and continuing behaviour at state s{}", c), c);
        }
    }

    SessionLts result;
    std::map<StateId, StateId> renamed;
    auto visit = [&](auto&& self, StateId c) -> StateId {
        if (auto it = renamed.find(c); it != renamed.end()) return it->second;
        StateId id = renamed.empty() ? result.initial() : result.add_state();
        renamed.emplace(c, id);
        for (const auto& e : class_edges[c]) {
            StateId t = self(self, e.target);
            result.add_transition(id, e.label, t);
        }
        return id;
    };
    visit(visit, sets.find(session.initial()));

    try {
        result.validate();
    } catch (const LtsError& err) {
        StateId original = LtsError::npos;
        for (const auto& [c, id] : renamed) {
            if (id == err.state()) original = c;
        }
        throw LtsError(fmt::format("pruning produced an invalid session at state s{}: {}",
                                   original, err.what()),
                       original);
    }
    return result;
}

namespace {

using RunKey = std::tuple<ActionKind, std::string, PayloadKind>;

RunKey run_key(const Label& l) {
    return {l.action, l.message, l.payload.element_kind()};
}

std::uint32_t element_count(const PayloadType& p) {
    return p.kind == PayloadKind::FixedArray ? p.length : 1;
}

}  // namespace

FoldResult fold_widths_counted(const SessionLts& session) {
    const std::size_t n = session.state_count();
    std::vector<std::uint32_t> in_degree(n, 0);
    {
        std::vector<bool> seen(n, false);
        std::vector<StateId> stack{session.initial()};
        seen[session.initial()] = true;
        while (!stack.empty()) {
            StateId s = stack.back();
            stack.pop_back();
            for (const auto& e : session.outgoing(s)) {
                ++in_degree[e.target];
                if (!seen[e.target]) {
                    seen[e.target] = true;
                    stack.push_back(e.target);
                }
            }
        }
    }

    auto continues = [&](StateId mid, const RunKey& key) {
        auto edges = session.outgoing(mid);
        return in_degree[mid] == 1 && edges.size() == 1 && run_key(edges.front().label) == key;
    };

    FoldResult out;
    std::map<StateId, StateId> renamed;
    auto visit = [&](auto&& self, StateId s) -> StateId {
        if (auto it = renamed.find(s); it != renamed.end()) return it->second;
        StateId id = renamed.empty() ? out.session.initial() : out.session.add_state();
        renamed.emplace(s, id);
        for (const auto& e : session.outgoing(s)) {
            RunKey key = run_key(e.label);
            Label merged = e.label;
            StateId end = e.target;
            std::size_t run = 1;
            std::uint32_t width = e.label.width();
            std::uint32_t count = element_count(e.label.payload);
            while (continues(end, key)) {
                const Edge& next = session.outgoing(end).front();
                width += next.label.width();
                count += element_count(next.label.payload);
                end = next.target;
                ++run;
            }
            if (run > 1) {
                PayloadType folded;
                folded.kind = PayloadKind::FixedArray;
                folded.element = e.label.payload.element_kind();
                folded.length = count;
                folded.element_length = e.label.payload.kind == PayloadKind::FixedString
                                            ? e.label.payload.length
                                            : e.label.payload.element_length;
                folded.width = width;
                merged.payload = folded;
                ++out.folds;
            }
            StateId t = self(self, end);
            out.session.add_transition(id, std::move(merged), t);
        }
        return id;
    };
    visit(visit, session.initial());
    return out;
}

SessionLts fold_widths(const SessionLts& session) {
    return fold_widths_counted(session).session;
}

}  // namespace vip::session
