#include "vip/hw/candidates.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>

namespace vip::hw {

using session::ActionKind;
using session::Label;
using session::SessionLts;

namespace {

struct Node {
    std::vector<Label> labels;
    std::vector<Node> children;
};

std::string key(const Node& n) {
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < n.labels.size(); ++i) {
        parts.push_back(fmt::format("{}[{}]", session::to_string(n.labels[i]), key(n.children[i])));
    }
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (const auto& p : parts) out += p;
    return out;
}

void emit(const Node& n, SessionLts& lts, session::StateId at) {
    for (std::size_t i = 0; i < n.labels.size(); ++i) {
        session::StateId next = lts.add_state();
        lts.add_transition(at, n.labels[i], next);
        emit(n.children[i], lts, next);
    }
}

class Unroller {
public:
    Unroller(const LabeledFsm& fsm, std::size_t iterations)
        : f_(fsm), k_(iterations), reset_(fsm.fsm.index_of(fsm.fsm.reset)) {}

    Node run(std::vector<std::string>& paths) {
        Node root;
        walk(reset_, 1, std::vector<bool>(f_.fsm.states.size(), false), "", root, false);
        paths = std::move(paths_);
        return root;
    }

private:
    struct Cursor {
        std::size_t iteration;
        std::vector<bool> seen;
        std::string path;
    };

    /// Enters state `s`. Returns false when the session ends here (the
    /// final iteration returned to reset).
    bool enter(std::size_t s, Cursor& c, bool via_transition) {
        if (s == reset_ && via_transition) {
            if (c.iteration == k_) {
                paths_.push_back(c.path);
                return false;
            }
            ++c.iteration;
            c.seen.assign(c.seen.size(), false);
        }
        const FsmState& st = f_.fsm.states[s];
        if (c.seen[s]) {
            throw FsmError(fmt::format("unsupported recursion: cycle through '{}' avoids reset '{}'",
                                       st.id, f_.fsm.reset));
        }
        c.seen[s] = true;
        c.path += (c.path.empty() ? "" : ">") + st.id;
        return true;
    }

    void walk(std::size_t s, std::size_t iteration, std::vector<bool> seen, std::string path,
              Node& node, bool via_transition) {
        Cursor c{iteration, std::move(seen), std::move(path)};
        if (!enter(s, c, via_transition)) return;
        const FsmState& st = f_.fsm.states[s];
        const auto& tag = f_.tags[s];

        if (!tag) {
            if (st.next.empty() || st.next == st.id) {
                paths_.push_back(c.path);  // sink; a stall self-loop is elided
                return;
            }
            walk(f_.fsm.index_of(st.next), c.iteration, c.seen, c.path, node, true);
            return;
        }

        switch (tag->action) {
        case ActionKind::Send:
        case ActionKind::Recv:
            node.labels.push_back(tag->label());
            node.children.emplace_back();
            follow(st.next, c, node.children.back());
            return;
        case ActionKind::Offer:
            for (const auto& arm : st.arms) {
                node.labels.push_back(
                    Label{ActionKind::Offer, arm.cond_label, session::PayloadType::port(tag->width)});
                node.children.emplace_back();
                walk(f_.fsm.index_of(arm.next), c.iteration, c.seen, c.path, node.children.back(), true);
            }
            return;
        case ActionKind::Choose:
            choose(st, c, node);
            return;
        }
    }

    void follow(const std::string& next, const Cursor& c, Node& node) {
        if (next.empty()) {
            paths_.push_back(c.path);
            return;
        }
        walk(f_.fsm.index_of(next), c.iteration, c.seen, c.path, node, true);
    }

    /// Each arm is labelled by its first tagged state, which must be a send
    /// and is consumed by the choice. Arms reaching the same send with the
    /// same continuation are one alternative.
    void choose(const FsmState& st, const Cursor& c, Node& node) {
        std::map<std::string, std::string> seen_arms;  // label text -> continuation key
        for (const auto& arm : st.arms) {
            Cursor ac = c;
            std::size_t t = f_.fsm.index_of(arm.next);
            while (true) {
                if (t == reset_) {
                    throw FsmError(fmt::format(
                        "internal branch in '{}' has an arm that returns to reset without sending",
                        st.id));
                }
                enter(t, ac, true);
                const FsmState& ts = f_.fsm.states[t];
                const auto& tt = f_.tags[t];
                if (!tt) {
                    if (ts.next.empty() || ts.next == ts.id) {
                        throw FsmError(fmt::format(
                            "internal branch in '{}' has an arm that ends without sending", st.id));
                    }
                    t = f_.fsm.index_of(ts.next);
                    continue;
                }
                if (tt->action != ActionKind::Send) {
                    throw FsmError(fmt::format(
                        "internal branch in '{}' reaches '{}' before any send", st.id, ts.id));
                }
                Label label{ActionKind::Choose, tt->message, session::PayloadType::port(tt->width)};
                Node child;
                follow(ts.next, ac, child);
                std::string text = session::to_string(label);
                std::string cont = key(child);
                auto it = seen_arms.find(text);
                if (it != seen_arms.end()) {
                    if (it->second != cont) {
                        throw FsmError(fmt::format(
                            "internal branch in '{}' has two arms sending '{}' that diverge afterwards",
                            st.id, tt->message));
                    }
                    break;
                }
                seen_arms.emplace(text, cont);
                node.labels.push_back(std::move(label));
                node.children.push_back(std::move(child));
                break;
            }
        }
    }

    const LabeledFsm& f_;
    std::size_t k_;
    std::size_t reset_;
    std::vector<std::string> paths_;
};

}  // namespace

std::vector<CandidateProtocol> extract_candidates(const LabeledFsm& fsm, std::size_t max_iterations) {
    if (max_iterations == 0) max_iterations = 1;
    std::map<std::string, CandidateProtocol> unique;
    for (std::size_t k = 1; k <= max_iterations; ++k) {
        std::vector<std::string> paths;
        Node root = Unroller(fsm, k).run(paths);
        SessionLts lts;
        emit(root, lts, lts.initial());
        try {
            lts.validate(true);
        } catch (const session::LtsError& e) {
            throw FsmError(fmt::format("IP '{}' does not yield a valid session: {}", fsm.fsm.ip, e.what()));
        }
        std::string canon = lts.canonical_key();
        if (unique.count(canon)) continue;
        std::sort(paths.begin(), paths.end());
        paths.erase(std::unique(paths.begin(), paths.end()), paths.end());
        unique.emplace(canon, CandidateProtocol{fmt::format("{}/{}", fsm.fsm.ip, k), fsm.fsm.ip,
                                                lts.canonical(), std::move(paths)});
    }
    std::vector<CandidateProtocol> out;
    for (auto& [k, c] : unique) out.push_back(std::move(c));
    return out;
}

}  // namespace vip::hw
