#include "vip/equiv/subtype.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace vip::equiv {

using session::Edge;
using session::Label;
using session::SessionLts;
using session::StateId;

bool witness_less(const std::vector<Label>& a, const std::vector<Label>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {

using Witness = std::optional<std::vector<Label>>;

const Edge* match(std::span<const Edge> edges, const Label& l) {
    for (const auto& e : edges) {
        if (e.label.message == l.message && e.label.width() == l.width()) return &e;
    }
    return nullptr;
}

const Label& least(std::span<const Edge> edges) {
    const Label* best = &edges.front().label;
    for (const auto& e : edges) {
        if (e.label < *best) best = &e.label;
    }
    return *best;
}

class Checker {
public:
    Checker(const SessionLts& sub, const SessionLts& sup) : a_(sub), b_(sup) {}

    Witness check(StateId s, StateId t) {
        auto key = std::make_pair(s, t);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        Witness w = compute(s, t);
        memo_.emplace(key, w);
        return w;
    }

private:
    static void keep_least(Witness& best, std::vector<Label> candidate) {
        if (!best || witness_less(candidate, *best)) best = std::move(candidate);
    }

    Witness compute(StateId s, StateId t) {
        auto sub = a_.outgoing(s);
        auto sup = b_.outgoing(t);
        if (sub.empty() && sup.empty()) return std::nullopt;
        if (sub.empty()) return std::vector<Label>{least(sup)};
        if (sup.empty()) return std::vector<Label>{least(sub)};
        auto pol = session::polarity(sub.front().label.action);
        if (pol != session::polarity(sup.front().label.action)) return std::vector<Label>{least(sub)};

        Witness best;
        // Output: every label sub may send must be accepted by sup.
        // Input: every label sup may receive must be handled by sub.
        auto driving = pol == session::Polarity::Output ? sub : sup;
        auto other = pol == session::Polarity::Output ? sup : sub;
        for (const auto& e : driving) {
            const Edge* m = match(other, e.label);
            if (!m) {
                keep_least(best, {e.label});
                continue;
            }
            StateId sub_next = pol == session::Polarity::Output ? e.target : m->target;
            StateId sup_next = pol == session::Polarity::Output ? m->target : e.target;
            if (Witness child = check(sub_next, sup_next)) {
                std::vector<Label> path{e.label};
                path.insert(path.end(), child->begin(), child->end());
                keep_least(best, std::move(path));
            }
        }
        return best;
    }

    const SessionLts& a_;
    const SessionLts& b_;
    std::map<std::pair<StateId, StateId>, Witness> memo_;
};

}  // namespace

SubtypeResult subtype(const SessionLts& sub, const SessionLts& sup) {
    Checker c(sub, sup);
    Witness w = c.check(sub.initial(), sup.initial());
    if (!w) return {true, {}};
    return {false, std::move(*w)};
}

}  // namespace vip::equiv
