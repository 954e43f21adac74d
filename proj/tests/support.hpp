#pragma once

#include "vip/session/lts.hpp"
#include "vip/session/notation.hpp"

#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace vip::test {

inline std::filesystem::path data_dir() { return VIP_DATA_DIR; }
inline std::filesystem::path data(const std::string& rel) { return data_dir() / rel; }

inline session::SessionLts S(const std::string& notation) { return session::parse_session(notation); }

inline constexpr const char* tree_messages[] = {"a", "b", "c", "d"};
inline constexpr std::uint32_t tree_widths[] = {1, 8, 16};

/// Random acyclic session with no mixed choice and distinct outgoing labels.
/// Messages are drawn from a small alphabet so that sessions share labels.
inline session::SessionLts random_tree(std::mt19937_64& rng, int max_depth, int max_branch = 2) {
    using namespace session;
    SessionLts s;
    auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
    auto grow = [&](auto& self, StateId at, int depth) -> void {
        if (depth == 0) return;
        int fanout = static_cast<int>(pick(static_cast<std::size_t>(max_branch) + 1));
        if (depth == max_depth && fanout == 0) fanout = 1;
        const bool output = pick(2) == 0;
        std::vector<std::pair<std::string, std::uint32_t>> used;
        for (int i = 0; i < fanout; ++i) {
            std::string m = tree_messages[pick(4)];
            std::uint32_t w = tree_widths[pick(3)];
            bool dup = false;
            for (const auto& [um, uw] : used) dup = dup || (um == m && uw == w);
            if (dup) continue;
            used.emplace_back(m, w);
            ActionKind act = output ? (fanout > 1 ? ActionKind::Choose : ActionKind::Send)
                                    : (fanout > 1 ? ActionKind::Offer : ActionKind::Recv);
            Label l{act, m, PayloadType::port(w)};
            StateId next = s.add_state();
            s.add_transition(at, l, next);
            self(self, next, depth - 1);
        }
    };
    grow(grow, s.initial(), max_depth);
    return s;
}

/// Random linear session of `length` labels over `alphabet` messages.
inline std::vector<session::Label> random_labels(std::mt19937_64& rng, std::size_t length,
                                                 std::size_t alphabet = 4) {
    using namespace session;
    std::vector<Label> out;
    static const std::uint32_t widths[] = {8, 16, 32};
    for (std::size_t i = 0; i < length; ++i) {
        ActionKind act = rng() % 2 ? ActionKind::Send : ActionKind::Recv;
        out.push_back({act, "m" + std::to_string(rng() % alphabet), PayloadType::integer(widths[rng() % 3])});
    }
    return out;
}

}  // namespace vip::test
