#include "vip/equiv/oracle.hpp"

#include "vip/session/ops.hpp"

#include <fmt/format.h>

#include <stdexcept>

namespace vip::equiv {

using session::SessionLts;

namespace {

void bound(const SessionLts& l) {
    if (l.transition_count() > oracle_transition_limit) {
        throw std::invalid_argument(fmt::format("oracle size bound exceeded: {} transitions > {}",
                                                l.transition_count(), oracle_transition_limit));
    }
}

bool same_channel(const session::Label& x, const session::Label& y) {
    return session::polarity(x.action) == session::polarity(y.action) && x.message == y.message &&
           x.payload.width == y.payload.width;
}

/// Greatest fixed point of the simulation condition over S1 x S2.
bool simulates(const SessionLts& a, const SessionLts& b) {
    const std::size_t n = a.state_count();
    const std::size_t m = b.state_count();
    std::vector<char> rel(n * m, 1);
    auto in = [&](std::size_t s, std::size_t t) { return rel[s * m + t] != 0; };

    // Every `from` edge needs a same-channel `to` edge with related targets.
    auto covered = [&](auto from, auto to, bool from_is_sub) {
        for (const auto& e : from) {
            bool found = false;
            for (const auto& f : to) {
                if (!same_channel(e.label, f.label)) continue;
                if (from_is_sub ? in(e.target, f.target) : in(f.target, e.target)) found = true;
            }
            if (!found) return false;
        }
        return true;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t s = 0; s < n; ++s) {
            for (std::size_t t = 0; t < m; ++t) {
                if (!in(s, t)) continue;
                auto x = a.outgoing(static_cast<session::StateId>(s));
                auto y = b.outgoing(static_cast<session::StateId>(t));
                bool ok;
                if (x.empty() || y.empty()) {
                    ok = x.empty() && y.empty();
                } else {
                    bool out_x = session::polarity(x.front().label.action) == session::Polarity::Output;
                    bool out_y = session::polarity(y.front().label.action) == session::Polarity::Output;
                    if (out_x != out_y) {
                        ok = false;
                    } else if (out_x) {
                        ok = covered(x, y, true);
                    } else {
                        ok = covered(y, x, false);
                    }
                }
                if (!ok) {
                    rel[s * m + t] = 0;
                    changed = true;
                }
            }
        }
    }
    return in(a.initial(), b.initial());
}

}  // namespace

bool oracle_subtype(const SessionLts& sub, const SessionLts& sup) {
    bound(sub);
    bound(sup);
    return simulates(sub, sup);
}

bool oracle_equivalent(const SessionLts& a, const SessionLts& b) {
    bound(a);
    bound(b);
    SessionLts fa = session::fold_widths(a);
    SessionLts fb = session::fold_widths(b);
    return simulates(fa, fb) && simulates(fb, fa);
}

}  // namespace vip::equiv
