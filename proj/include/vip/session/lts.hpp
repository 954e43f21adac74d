#pragma once

#include "vip/session/label.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vip::session {

using StateId = std::uint32_t;

/// Structural defect in a session LTS; names the offending state when known.
class LtsError : public std::runtime_error {
public:
    explicit LtsError(const std::string& what, StateId state = npos)
        : std::runtime_error(what), state_(state) {}
    StateId state() const { return state_; }
    static constexpr StateId npos = static_cast<StateId>(-1);

private:
    StateId state_;
};

struct Edge {
    Label label;
    StateId target = 0;
};

struct Transition {
    StateId source = 0;
    Label label;
    StateId target = 0;
};

/// Finite acyclic labeled transition system (S, A, T, s0). Terminal states
/// are exactly the states without outgoing transitions.
class SessionLts {
public:
    SessionLts();

    StateId add_state();
    void add_transition(StateId from, Label label, StateId to);
    void set_initial(StateId state);

    StateId initial() const { return initial_; }
    std::size_t state_count() const { return out_.size(); }
    std::size_t transition_count() const;

    std::span<const Edge> outgoing(StateId state) const { return out_.at(state); }
    std::vector<Edge>& mutable_outgoing(StateId state) { return out_.at(state); }
    bool is_terminal(StateId state) const { return out_.at(state).empty(); }
    std::vector<StateId> terminals() const;
    std::vector<Transition> transitions() const;

    /// Distinct labels used anywhere in the LTS (the action set A).
    std::vector<Label> actions() const;

    /// Throws LtsError unless every invariant holds: acyclic, no mixed
    /// polarity, outgoing (message, width) pairwise distinct. With
    /// `require_widths`, every label must also be annotated.
    void validate(bool require_widths = false) const;

    /// Renumbers reachable states in deterministic DFS order (edges sorted
    /// by label). Two LTSs are structurally equal up to state renaming iff
    /// their canonical forms compare equal.
    SessionLts canonical() const;
    std::string canonical_key() const;

    bool operator==(const SessionLts& other) const;

private:
    std::vector<std::vector<Edge>> out_;
    StateId initial_ = 0;
};

/// Linear session `l0 . l1 . ... . end`.
SessionLts linear(std::span<const Label> labels);

/// Root-to-terminal label sequences, sorted.
std::vector<std::vector<Label>> enumerate_traces(const SessionLts& session);

}  // namespace vip::session
