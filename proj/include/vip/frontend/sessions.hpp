#pragma once

#include "vip/frontend/object_graph.hpp"
#include "vip/session/lts.hpp"

#include <string>
#include <vector>

namespace vip::frontend {

/// Bit-widths for abstract software types.
struct WidthPolicy {
    std::uint32_t integer_bits = 32;
    std::uint32_t boolean_bits = 1;
    std::uint32_t character_bits = 8;
    /// Bound for bare `str`. Zero means "not set"; derive_sessions then uses
    /// the longest string literal in the program.
    std::uint32_t string_characters = 0;
};

enum class Perspective { Caller, Callee };

struct PairSession {
    std::string caller;
    std::string callee;
    session::SessionLts session;
};

/// One linear session per (caller, callee) pair with at least one edge,
/// sorted by (caller, callee). From the caller's side every call is
/// `!request . ?response`; the callee's side is the mirror image. Labels
/// are abstract until annotate_widths.
std::vector<PairSession> extract_sessions(const ObjectGraph& graph,
                                          Perspective perspective = Perspective::Caller);

/// Concretizes every label that has no width yet. Throws std::invalid_argument
/// for an unbounded type (a dynamic array, or a bare string with no bound).
session::SessionLts annotate_widths(const session::SessionLts& session, const WidthPolicy& policy);

session::PayloadType annotate_payload(const session::PayloadType& payload,
                                      const WidthPolicy& policy);

/// extract_sessions followed by annotate_widths, with bare strings bounded
/// by the longest literal unless the policy sets a bound.
std::vector<PairSession> derive_sessions(const ObjectGraph& graph, WidthPolicy policy = {},
                                         Perspective perspective = Perspective::Caller);

}  // namespace vip::frontend
