#include "vip/session/label.hpp"

#include <fmt/format.h>

#include <tuple>

namespace vip::session {

Polarity polarity(ActionKind action) {
    switch (action) {
    case ActionKind::Send:
    case ActionKind::Choose:
        return Polarity::Output;
    case ActionKind::Recv:
    case ActionKind::Offer:
        return Polarity::Input;
    }
    return Polarity::Output;
}

ActionKind dual(ActionKind action) {
    switch (action) {
    case ActionKind::Send: return ActionKind::Recv;
    case ActionKind::Recv: return ActionKind::Send;
    case ActionKind::Choose: return ActionKind::Offer;
    case ActionKind::Offer: return ActionKind::Choose;
    }
    return action;
}

char action_symbol(ActionKind action) {
    switch (action) {
    case ActionKind::Send: return '!';
    case ActionKind::Recv: return '?';
    case ActionKind::Choose: return '+';
    case ActionKind::Offer: return '&';
    }
    return '!';
}

std::optional<ActionKind> parse_action(std::string_view symbol) {
    if (symbol == "!") return ActionKind::Send;
    if (symbol == "?") return ActionKind::Recv;
    if (symbol == "+" || symbol == "⊕") return ActionKind::Choose;
    if (symbol == "&") return ActionKind::Offer;
    return std::nullopt;
}

std::string_view to_string(PayloadKind kind) {
    switch (kind) {
    case PayloadKind::Integer: return "integer";
    case PayloadKind::Boolean: return "boolean";
    case PayloadKind::FixedString: return "fixed-string";
    case PayloadKind::FixedArray: return "fixed-array";
    }
    return "integer";
}

std::optional<PayloadKind> parse_payload_kind(std::string_view text) {
    if (text == "integer" || text == "int") return PayloadKind::Integer;
    if (text == "boolean" || text == "bool") return PayloadKind::Boolean;
    if (text == "fixed-string" || text == "string") return PayloadKind::FixedString;
    if (text == "fixed-array" || text == "array") return PayloadKind::FixedArray;
    return std::nullopt;
}

PayloadType PayloadType::integer(std::uint32_t width) {
    PayloadType p;
    p.kind = PayloadKind::Integer;
    p.element = PayloadKind::Integer;
    p.width = width;
    return p;
}

PayloadType PayloadType::boolean(std::uint32_t width) {
    PayloadType p;
    p.kind = PayloadKind::Boolean;
    p.element = PayloadKind::Boolean;
    p.width = width;
    return p;
}

PayloadType PayloadType::fixed_string(std::uint32_t characters, std::uint32_t width) {
    PayloadType p;
    p.kind = PayloadKind::FixedString;
    p.element = PayloadKind::FixedString;
    p.length = characters;
    p.width = width;
    return p;
}

PayloadType PayloadType::array(const PayloadType& element, std::uint32_t count) {
    PayloadType p;
    p.kind = PayloadKind::FixedArray;
    if (element.kind == PayloadKind::FixedArray) {
        // Nested arrays flatten: int[4][2] is eight integers.
        p.element = element.element;
        p.length = element.length * count;
        p.element_length = element.element_length;
    } else {
        p.element = element.kind;
        p.length = count;
        p.element_length = element.kind == PayloadKind::FixedString ? element.length : 0;
    }
    p.width = element.width * count;
    return p;
}

PayloadType PayloadType::tuple(std::vector<PayloadType> members) {
    PayloadType p;
    p.kind = PayloadKind::FixedArray;
    p.element = PayloadKind::Boolean;
    p.length = 0;
    std::uint32_t total = 0;
    bool all_known = true;
    for (const auto& m : members) {
        total += m.width;
        all_known = all_known && m.annotated();
    }
    if (all_known) {
        p.length = total;
        p.width = total;
    }
    p.members = std::move(members);
    return p;
}

PayloadType PayloadType::port(std::uint32_t width) {
    return width == 1 ? boolean(1) : integer(width);
}

std::string describe(const PayloadType& payload) {
    std::string w = payload.annotated() ? fmt::format("{} bits", payload.width) : "abstract";
    if (payload.kind == PayloadKind::FixedArray) {
        return fmt::format("fixed-array({} x {}, {})", to_string(payload.element),
                           payload.length, w);
    }
    if (payload.kind == PayloadKind::FixedString) {
        return fmt::format("fixed-string({} chars, {})", payload.length, w);
    }
    return fmt::format("{}({})", to_string(payload.kind), w);
}

bool Label::operator==(const Label& other) const {
    return action == other.action && message == other.message && payload == other.payload;
}

std::strong_ordering Label::operator<=>(const Label& other) const {
    auto key = [](const Label& l) {
        return std::tie(l.action, l.message, l.payload.width, l.payload.kind, l.payload.element,
                        l.payload.length);
    };
    return key(*this) <=> key(other);
}

Label send(std::string message, std::uint32_t width) {
    return Label{ActionKind::Send, std::move(message), PayloadType::integer(width)};
}

Label recv(std::string message, std::uint32_t width) {
    return Label{ActionKind::Recv, std::move(message), PayloadType::integer(width)};
}

std::string to_string(const Label& label) {
    return fmt::format("{}{}({})", action_symbol(label.action), label.message, label.width());
}

std::string to_string(const std::vector<Label>& trace) {
    std::string out;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (i) out += '.';
        out += to_string(trace[i]);
    }
    return out;
}

}  // namespace vip::session
