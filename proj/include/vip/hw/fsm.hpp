#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vip::hw {

class FsmError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class PortDir { In, Out };

struct Port {
    std::string name;
    PortDir dir = PortDir::In;
    std::uint32_t width = 1;

    bool operator==(const Port&) const = default;
};

enum class BranchKind { None, Internal, InputData };

std::string_view to_string(BranchKind kind);

struct Arm {
    std::string cond_label;
    std::string next;

    bool operator==(const Arm&) const = default;
};

struct FsmState {
    std::string id;
    /// Output handshakes driven high in this state (`P.valid = 1`).
    std::vector<std::string> asserts;
    /// Input handshakes this state waits on (`if (P.valid) goto ...`).
    std::vector<std::string> guards;
    BranchKind branch = BranchKind::None;
    /// Input port whose data selects the arm of an input-data branch.
    std::string branch_port;
    /// Message carried by the handshake; defaults to the port name.
    std::string message;
    std::vector<Arm> arms;
    /// Unconditional successor; empty for a sink or a branching state.
    std::string next;

    bool operator==(const FsmState&) const = default;
};

struct FsmTransition {
    std::string from;
    std::string to;
    std::string guard;
};

/// Hardware IP state machine with handshake and branch annotations.
struct HwFsm {
    std::string ip;
    std::string reset;
    std::vector<Port> ports;
    std::vector<FsmState> states;

    const Port* find_port(std::string_view name) const;
    const FsmState* find_state(std::string_view id) const;
    std::size_t index_of(std::string_view id) const;
    std::vector<FsmTransition> transitions() const;

    bool operator==(const HwFsm&) const = default;
};

/// Number of session-relevant patterns in a state: asserted outputs,
/// guarded inputs and branches.
std::size_t pattern_count(const FsmState& state);

/// Throws FsmError unless the machine is well formed: resolvable reset,
/// ports and successors, positive port widths, at most one session pattern
/// per state, and every state reachable from reset.
void validate(const HwFsm& fsm);

}  // namespace vip::hw
