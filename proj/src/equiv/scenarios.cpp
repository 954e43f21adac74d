#include "vip/equiv/scenarios.hpp"

#include <fmt/format.h>

#include <random>
#include <stdexcept>

namespace vip::equiv {

using session::ActionKind;
using session::Label;
using session::PayloadType;
using session::SessionLts;

std::string_view to_string(Mutation m) {
    switch (m) {
    case Mutation::None: return "none";
    case Mutation::Ordering: return "ordering";
    case Mutation::MessageIdentity: return "message-identity";
    case Mutation::Branching: return "branching";
    case Mutation::BitWidth: return "bit-width";
    case Mutation::ControlSignal: return "control-signal";
    }
    return "none";
}

std::string_view to_string(Expected e) {
    switch (e) {
    case Expected::Eq: return "eq";
    case Expected::NonEq: return "non-eq";
    case Expected::EqWithFilter: return "eq-with-filter";
    }
    return "eq";
}

std::optional<Mutation> parse_mutation(std::string_view text) {
    for (Mutation m : all_mutations) {
        if (to_string(m) == text) return m;
    }
    return std::nullopt;
}

namespace {

/// Bounded draw by modulo on the raw engine output; unlike the standard
/// distributions this is identical on every standard library.
std::uint32_t pick(std::mt19937_64& rng, std::uint32_t n) {
    return static_cast<std::uint32_t>(rng() % n);
}

std::uint64_t mix(std::uint64_t seed, std::uint32_t length, Mutation m) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (1 + length * 8 + static_cast<std::uint32_t>(m));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

bool same_key(const Label& a, const Label& b) {
    return a.action == b.action && a.message == b.message;
}

std::vector<Label> base_sequence(std::mt19937_64& rng, std::uint32_t length) {
    static constexpr std::uint32_t widths[] = {8, 16, 32};
    const std::uint32_t pool = std::max<std::uint32_t>(2, (length + 1) / 2);
    std::vector<Label> out;
    while (out.size() < length) {
        Label l{pick(rng, 2) ? ActionKind::Send : ActionKind::Recv,
                fmt::format("m{}", pick(rng, pool)), PayloadType::integer(widths[pick(rng, 3)])};
        if (!out.empty() && same_key(out.back(), l)) continue;
        out.push_back(std::move(l));
    }
    return out;
}

std::vector<std::uint32_t> swap_positions(const std::vector<Label>& k) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i + 1 < k.size(); ++i) {
        if (i > 0 && same_key(k[i - 1], k[i + 1])) continue;
        if (i + 2 < k.size() && same_key(k[i], k[i + 2])) continue;
        out.push_back(i);
    }
    return out;
}

struct Shape {
    std::vector<Label> labels;
    /// Extra alternative leaving the state before labels[branch_at].
    std::optional<std::size_t> branch_at;
    Label branch;
};

SessionLts build(const Shape& s) {
    SessionLts lts;
    session::StateId cur = lts.initial();
    for (std::size_t i = 0; i < s.labels.size(); ++i) {
        if (s.branch_at && *s.branch_at == i) lts.add_transition(cur, s.branch, lts.add_state());
        session::StateId next = lts.add_state();
        lts.add_transition(cur, s.labels[i], next);
        cur = next;
    }
    return lts;
}

void split_in_place(Shape& s, std::size_t j, std::uint32_t beats) {
    Label l = s.labels[j];
    l.payload = PayloadType::integer(l.width() / beats);
    s.labels.erase(s.labels.begin() + static_cast<std::ptrdiff_t>(j));
    s.labels.insert(s.labels.begin() + static_cast<std::ptrdiff_t>(j), beats, l);
    if (s.branch_at && *s.branch_at > j) *s.branch_at += beats - 1;
}

}  // namespace

SessionLts beat_split(const SessionLts& linear_session, std::size_t index, std::uint32_t beats) {
    auto traces = session::enumerate_traces(linear_session);
    if (traces.size() != 1 || traces.front().size() != linear_session.transition_count()) {
        throw std::invalid_argument("beat_split needs a linear session");
    }
    Shape s{traces.front(), std::nullopt, {}};
    if (index >= s.labels.size()) throw std::invalid_argument("beat_split index out of range");
    if (beats < 1 || s.labels[index].width() % beats != 0) {
        throw std::invalid_argument("beats must divide the message width");
    }
    split_in_place(s, index, beats);
    return build(s);
}

Scenario generate_scenario(std::uint64_t seed, std::uint32_t length, Mutation mutation,
                           bool beat_split) {
    if (length < min_scenario_length || length > max_scenario_length) {
        throw std::invalid_argument(fmt::format("scenario length {} outside {}..{}", length,
                                                min_scenario_length, max_scenario_length));
    }
    std::mt19937_64 rng(mix(seed, length, mutation));
    Scenario sc;
    sc.seed = seed;
    sc.length = length;
    sc.mutation = mutation;

    std::vector<Label> sw = base_sequence(rng, length);
    Shape hw{sw, std::nullopt, {}};
    std::size_t offset = 0;  // index shift of software labels inside hw
    std::uint32_t guard_lo = 0, guard_hi = 0;  // software indices near the defect

    switch (mutation) {
    case Mutation::None:
        sc.expected = Expected::Eq;
        break;
    case Mutation::Ordering: {
        auto pos = swap_positions(sw);
        while (pos.empty()) {
            sw = base_sequence(rng, length);
            pos = swap_positions(sw);
        }
        std::uint32_t i = pos[pick(rng, static_cast<std::uint32_t>(pos.size()))];
        hw.labels = sw;
        std::swap(hw.labels[i], hw.labels[i + 1]);
        sc.defect = i;
        guard_lo = i;
        guard_hi = i + 1;
        sc.expected = Expected::NonEq;
        break;
    }
    case Mutation::MessageIdentity: {
        std::uint32_t i = pick(rng, length);
        hw.labels[i].message = fmt::format("x{}", i);
        sc.defect = guard_lo = guard_hi = i;
        sc.expected = Expected::NonEq;
        break;
    }
    case Mutation::BitWidth: {
        std::uint32_t i = pick(rng, length);
        std::uint32_t w = hw.labels[i].width();
        hw.labels[i].payload = PayloadType::integer(w == 8 ? 16 : w == 16 ? 8 : 16);
        sc.defect = guard_lo = guard_hi = i;
        sc.expected = Expected::NonEq;
        break;
    }
    case Mutation::Branching: {
        std::uint32_t i = pick(rng, length);
        hw.branch_at = i;
        hw.branch = Label{sw[i].action, fmt::format("b{}", i), PayloadType::integer(sw[i].width())};
        sc.defect = guard_lo = guard_hi = i;
        sc.expected = Expected::NonEq;
        break;
    }
    case Mutation::ControlSignal:
        hw.labels.insert(hw.labels.begin(), Label{ActionKind::Recv, "start", PayloadType::port(1)});
        hw.labels.push_back(Label{ActionKind::Send, "done", PayloadType::port(1)});
        offset = 1;
        guard_lo = 0;
        guard_hi = length - 1;
        sc.expected = Expected::EqWithFilter;
        break;
    }

    if (beat_split) {
        std::vector<std::uint32_t> eligible;
        for (std::uint32_t j = 0; j < length; ++j) {
            bool near = sc.defect && j + 1 >= guard_lo && j <= guard_hi + 1;
            if (!near) eligible.push_back(j);
        }
        if (mutation == Mutation::ControlSignal) {
            // start/done sit outside the sequence; any label may be split.
            eligible.clear();
            for (std::uint32_t j = 0; j < length; ++j) eligible.push_back(j);
        }
        if (!eligible.empty()) {
            std::uint32_t j = eligible[pick(rng, static_cast<std::uint32_t>(eligible.size()))];
            std::uint32_t beats = pick(rng, 2) ? 4 : 2;
            split_in_place(hw, j + offset, beats);
            sc.split = j;
        }
    }

    sc.left = session::linear(sw);
    sc.right = build(hw);
    return sc;
}

}  // namespace vip::equiv
