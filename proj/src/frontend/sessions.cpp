#include "vip/frontend/sessions.hpp"

#include <fmt/format.h>

#include <map>
#include <stdexcept>

namespace vip::frontend {

using session::ActionKind;
using session::Label;
using session::PayloadKind;
using session::PayloadType;
using session::SessionLts;

std::vector<PairSession> extract_sessions(const ObjectGraph& graph, Perspective perspective) {
    std::map<std::pair<std::string, std::string>, std::vector<Label>> runs;
    const bool caller = perspective == Perspective::Caller;
    for (const auto& e : graph.edges) {
        auto& labels = runs[{e.caller, e.callee}];
        labels.push_back(Label{caller ? ActionKind::Send : ActionKind::Recv, e.request_message,
                               e.request_payload()});
        labels.push_back(Label{caller ? ActionKind::Recv : ActionKind::Send, e.response_message,
                               e.result});
    }
    std::vector<PairSession> out;
    for (auto& [pair, labels] : runs) {
        out.push_back({pair.first, pair.second, session::linear(labels)});
    }
    return out;
}

namespace {

std::uint32_t string_bound(std::uint32_t declared, const WidthPolicy& policy) {
    std::uint32_t n = declared ? declared : policy.string_characters;
    if (n == 0) throw std::invalid_argument("string has no length bound");
    return n;
}

std::uint32_t scalar_bits(PayloadKind kind, std::uint32_t chars, const WidthPolicy& policy) {
    switch (kind) {
    case PayloadKind::Integer: return policy.integer_bits;
    case PayloadKind::Boolean: return policy.boolean_bits;
    case PayloadKind::FixedString: return policy.character_bits * chars;
    case PayloadKind::FixedArray: break;
    }
    throw std::invalid_argument("nested array element");
}

}  // namespace

PayloadType annotate_payload(const PayloadType& p, const WidthPolicy& policy) {
    if (p.annotated()) return p;
    switch (p.kind) {
    case PayloadKind::Integer: return PayloadType::integer(policy.integer_bits);
    case PayloadKind::Boolean: return PayloadType::boolean(policy.boolean_bits);
    case PayloadKind::FixedString: {
        std::uint32_t n = string_bound(p.length, policy);
        return PayloadType::fixed_string(n, n * policy.character_bits);
    }
    case PayloadKind::FixedArray: break;
    }
    if (!p.members.empty()) {
        std::vector<PayloadType> members;
        for (const auto& m : p.members) members.push_back(annotate_payload(m, policy));
        return PayloadType::tuple(std::move(members));
    }
    if (p.length == 0) throw std::invalid_argument("array has no fixed length");
    PayloadType out = p;
    std::uint32_t chars = 0;
    if (p.element == PayloadKind::FixedString) {
        chars = string_bound(p.element_length, policy);
        out.element_length = chars;
    }
    out.width = p.length * scalar_bits(p.element, chars, policy);
    return out;
}

SessionLts annotate_widths(const SessionLts& session, const WidthPolicy& policy) {
    SessionLts out = session;
    for (session::StateId s = 0; s < out.state_count(); ++s) {
        for (auto& edge : out.mutable_outgoing(s)) {
            try {
                edge.label.payload = annotate_payload(edge.label.payload, policy);
            } catch (const std::invalid_argument& e) {
                throw std::invalid_argument(
                    fmt::format("cannot bound '{}': {}", edge.label.message, e.what()));
            }
        }
    }
    return out;
}

std::vector<PairSession> derive_sessions(const ObjectGraph& graph, WidthPolicy policy,
                                         Perspective perspective) {
    if (policy.string_characters == 0) policy.string_characters = graph.longest_string_literal;
    auto pairs = extract_sessions(graph, perspective);
    for (auto& p : pairs) p.session = annotate_widths(p.session, policy);
    return pairs;
}

}  // namespace vip::frontend
