#include "vip/session/notation.hpp"

#include <fmt/format.h>

#include <cctype>
#include <charconv>

namespace vip::session {

namespace {

class NotationParser {
public:
    explicit NotationParser(std::string_view text) : text_(text) {}

    SessionLts parse() {
        session(lts_.initial());
        skip_space();
        if (pos_ != text_.size()) fail("trailing input");
        lts_.validate();
        return lts_;
    }

private:
    void session(StateId at) {
        skip_space();
        if (consume_word("end")) return;
        if (peek() == '{') {
            ++pos_;
            do {
                step(at);
                skip_space();
            } while (consume(',') || consume('|'));
            expect('}');
            return;
        }
        step(at);
    }

    void step(StateId at) {
        Label label = parse_label();
        StateId next = lts_.add_state();
        lts_.add_transition(at, std::move(label), next);
        skip_space();
        if (consume('.')) session(next);
    }

    Label parse_label() {
        skip_space();
        auto action = parse_action(std::string_view(text_).substr(pos_, 1));
        if (!action) fail("expected one of ! ? + &");
        ++pos_;
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        if (start == pos_) fail("expected message identifier");
        std::string message(text_.substr(start, pos_ - start));
        expect('(');
        std::uint32_t width = 0;
        auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), width);
        if (ec != std::errc{} || width == 0) fail("expected positive width");
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        expect(')');
        return Label{*action, std::move(message), PayloadType::port(width)};
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    bool consume(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    bool consume_word(std::string_view word) {
        skip_space();
        if (text_.substr(pos_, word.size()) != word) return false;
        pos_ += word.size();
        return true;
    }
    void expect(char c) {
        if (!consume(c)) fail(fmt::format("expected '{}'", c));
    }
    [[noreturn]] void fail(const std::string& what) {
        throw NotationError(fmt::format("session notation, offset {}: {}", pos_, what));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    SessionLts lts_;
};

void render(const SessionLts& lts, StateId s, std::string& out) {
    auto edges = lts.outgoing(s);
    if (edges.empty()) {
        out += "end";
        return;
    }
    auto step = [&](const Edge& e) {
        out += to_string(e.label);
        if (!lts.is_terminal(e.target)) {
            out += '.';
            render(lts, e.target, out);
        }
    };
    if (edges.size() == 1) {
        step(edges.front());
        return;
    }
    out += '{';
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (i) out += ", ";
        step(edges[i]);
    }
    out += '}';
}

}  // namespace

SessionLts parse_session(std::string_view text) {
    return NotationParser(text).parse();
}

std::string to_notation(const SessionLts& session) {
    std::string out;
    SessionLts c = session.canonical();
    render(c, c.initial(), out);
    return out;
}

}  // namespace vip::session
