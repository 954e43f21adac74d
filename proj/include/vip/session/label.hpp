#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vip::session {

/// Session-type action carried by a transition label.
enum class ActionKind : std::uint8_t { Send, Recv, Choose, Offer };

/// Send/Choose are driven by the local party, Recv/Offer by its peer.
enum class Polarity : std::uint8_t { Output, Input };

Polarity polarity(ActionKind action);
ActionKind dual(ActionKind action);

/// Interchange symbol: `!`, `?`, `+`, `&`.
char action_symbol(ActionKind action);
std::optional<ActionKind> parse_action(std::string_view symbol);

enum class PayloadKind : std::uint8_t { Integer, Boolean, FixedString, FixedArray };

std::string_view to_string(PayloadKind kind);
std::optional<PayloadKind> parse_payload_kind(std::string_view text);

/// Fixed-size payload. A width of zero means "abstract": the bit-width has
/// not been concretized yet (see `annotate_widths`).
struct PayloadType {
    PayloadKind kind = PayloadKind::Integer;
    /// Element kind for FixedArray; never FixedArray itself.
    PayloadKind element = PayloadKind::Integer;
    /// FixedString: characters (0 = bounded by policy). FixedArray: elements.
    std::uint32_t length = 1;
    /// Characters per element for arrays of strings.
    std::uint32_t element_length = 0;
    std::uint32_t width = 0;
    /// Heterogeneous multi-argument requests: the component payloads whose
    /// widths are summed. Such payloads are bit vectors (array of boolean).
    std::vector<PayloadType> members;

    static PayloadType integer(std::uint32_t width = 0);
    static PayloadType boolean(std::uint32_t width = 0);
    static PayloadType fixed_string(std::uint32_t characters, std::uint32_t width = 0);
    static PayloadType array(const PayloadType& element, std::uint32_t count);
    static PayloadType tuple(std::vector<PayloadType> members);
    /// Raw hardware port payload: 1-bit ports are boolean, wider ones integer.
    static PayloadType port(std::uint32_t width);

    PayloadKind element_kind() const { return kind == PayloadKind::FixedArray ? element : kind; }
    bool annotated() const { return width > 0; }

    bool operator==(const PayloadType&) const = default;
};

std::string describe(const PayloadType& payload);

/// Transition label (action, message, type, width). The width is the payload's.
struct Label {
    ActionKind action = ActionKind::Send;
    std::string message;
    PayloadType payload;

    std::uint32_t width() const { return payload.width; }

    bool operator==(const Label& other) const;
    /// Canonical order: (action, message, width, payload kind).
    std::strong_ordering operator<=>(const Label& other) const;
};

Label send(std::string message, std::uint32_t width);
Label recv(std::string message, std::uint32_t width);

/// `!A(8)`, `?E(16)`, `+x(1)`, `&sel(2)`.
std::string to_string(const Label& label);
std::string to_string(const std::vector<Label>& trace);

}  // namespace vip::session
