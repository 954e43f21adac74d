#pragma once

#include "vip/hw/fsm.hpp"
#include "vip/session/label.hpp"

#include <optional>
#include <vector>

namespace vip::hw {

/// Session action a state performs. Offer tags carry the selecting port;
/// their arm labels are the arms' condition labels. Choose tags carry no
/// message: each arm is labelled by its first tagged send.
struct StateTag {
    session::ActionKind action = session::ActionKind::Send;
    std::string port;
    std::string message;
    std::uint32_t width = 0;

    session::Label label() const;
    bool operator==(const StateTag&) const = default;
};

struct LabeledFsm {
    HwFsm fsm;
    /// Parallel to fsm.states; nullopt for pass-through states.
    std::vector<std::optional<StateTag>> tags;
};

/// RTL pattern to session action:
///   output handshake = 1      -> Send(port width)
///   if (input handshake)      -> Recv(port width)
///   input-data-driven branch  -> Offer
///   internal branch           -> Choose
/// Throws FsmError for a state with more than one pattern.
LabeledFsm classify_actions(const HwFsm& fsm);

}  // namespace vip::hw
