#include "vip/hw/toy_hdl.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <charconv>

namespace vip::hw {

namespace {

struct Tok {
    enum class Kind { Word, Number, Punct, End } kind = Kind::End;
    std::string text;
    std::uint32_t line = 1;
};

std::vector<Tok> lex(std::string_view src) {
    std::vector<Tok> out;
    std::uint32_t line = 1;
    std::size_t i = 0;
    while (i < src.size()) {
        char c = src[i];
        if (c == '\n') {
            ++line;
            ++i;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
            while (i < src.size() && src[i] != '\n') ++i;
        } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = i;
            while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
            std::string word(src.substr(start, i - start));
            bool digits = std::all_of(word.begin(), word.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
            out.push_back({digits ? Tok::Kind::Number : Tok::Kind::Word, std::move(word), line});
        } else if (std::string_view("{}();:.=|").find(c) != std::string_view::npos) {
            out.push_back({Tok::Kind::Punct, std::string(1, c), line});
            ++i;
        } else {
            throw FsmError(fmt::format("line {}: non-FSM construct '{}'", line, c));
        }
    }
    out.push_back({Tok::Kind::End, "", line});
    return out;
}

class ToyParser {
public:
    explicit ToyParser(std::vector<Tok> toks) : t_(std::move(toks)) {}

    HwFsm run() {
        while (peek().kind != Tok::Kind::End) {
            std::string kw = word("declaration");
            if (kw == "ip") {
                fsm_.ip = word("ip name");
            } else if (kw == "in" || kw == "out") {
                Port p;
                p.dir = kw == "in" ? PortDir::In : PortDir::Out;
                p.name = word("port name");
                p.width = number("port width");
                fsm_.ports.push_back(std::move(p));
            } else if (kw == "reset") {
                fsm_.reset = word("reset state");
            } else if (kw == "state") {
                state();
            } else {
                fail(fmt::format("non-FSM construct '{}'", kw));
            }
        }
        if (fsm_.ip.empty()) fsm_.ip = "ip";
        if (fsm_.reset.empty() && !fsm_.states.empty()) fsm_.reset = fsm_.states.front().id;
        validate(fsm_);
        return std::move(fsm_);
    }

private:
    void state() {
        FsmState s;
        s.id = word("state id");
        expect("{");
        while (!is("}")) {
            if (peek().kind == Tok::Kind::End) fail(fmt::format("unterminated state '{}'", s.id));
            if (accept(";")) continue;
            statement(s);
        }
        expect("}");
        fsm_.states.push_back(std::move(s));
    }

    void statement(FsmState& s) {
        std::string kw = word("statement");
        if (kw == "goto") {
            successor(s, word("target state"));
        } else if (kw == "if") {
            expect("(");
            std::string port = word("port");
            expect(".");
            if (word("handshake") != "valid") fail("only 'PORT.valid' may be tested");
            expect(")");
            if (word("goto") != "goto") fail("expected 'goto'");
            s.guards.push_back(port);
            successor(s, word("target state"));
        } else if (kw == "case") {
            expect("(");
            s.branch_port = word("port");
            expect(".");
            if (word("data") != "data") fail("expected 'PORT.data'");
            expect(")");
            expect("{");
            branch(s, BranchKind::InputData);
            while (!is("}")) {
                if (accept(";")) continue;
                std::string label = any("arm label");
                expect(":");
                if (word("goto") != "goto") fail("expected 'goto'");
                s.arms.push_back({label, word("target state")});
            }
            expect("}");
        } else if (kw == "branch") {
            expect("{");
            branch(s, BranchKind::Internal);
            do {
                if (word("goto") != "goto") fail("expected 'goto'");
                s.arms.push_back({std::to_string(s.arms.size()), word("target state")});
            } while (accept("|"));
            accept(";");
            expect("}");
        } else {
            // PORT.valid = 1 or PORT.data = MSG
            if (!accept(".")) fail(fmt::format("non-FSM construct '{}'", kw));
            std::string member = word("'valid' or 'data'");
            expect("=");
            if (member == "valid") {
                if (number("handshake value") != 1) fail("only 'PORT.valid = 1' is supported");
                s.asserts.push_back(kw);
            } else if (member == "data") {
                s.message = word("message name");
            } else {
                fail(fmt::format("unknown port member '{}'", member));
            }
        }
    }

    void successor(FsmState& s, std::string target) {
        if (!s.next.empty()) fail(fmt::format("state '{}' has two successors", s.id));
        s.next = std::move(target);
    }

    void branch(FsmState& s, BranchKind kind) {
        if (s.branch != BranchKind::None) fail(fmt::format("state '{}' has two branches", s.id));
        s.branch = kind;
    }

    const Tok& peek() const { return t_[pos_]; }
    const Tok& next() {
        const Tok& t = t_[pos_];
        if (pos_ + 1 < t_.size()) ++pos_;
        return t;
    }
    bool is(std::string_view p) const { return peek().kind == Tok::Kind::Punct && peek().text == p; }
    bool accept(std::string_view p) {
        if (!is(p)) return false;
        next();
        return true;
    }
    void expect(std::string_view p) {
        if (!accept(p)) fail(fmt::format("expected '{}'", p));
    }
    std::string word(std::string_view what) {
        if (peek().kind != Tok::Kind::Word) fail(fmt::format("expected {}", what));
        return next().text;
    }
    std::string any(std::string_view what) {
        if (peek().kind != Tok::Kind::Word && peek().kind != Tok::Kind::Number) {
            fail(fmt::format("expected {}", what));
        }
        return next().text;
    }
    std::uint32_t number(std::string_view what) {
        if (peek().kind != Tok::Kind::Number) fail(fmt::format("expected {}", what));
        const Tok& t = next();
        std::uint32_t v = 0;
        std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        return v;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw FsmError(fmt::format("line {}: {}", peek().line, what));
    }

    std::vector<Tok> t_;
    std::size_t pos_ = 0;
    HwFsm fsm_;
};

}  // namespace

HwFsm parse_toy_hdl(std::string_view text) {
    return ToyParser(lex(text)).run();
}

std::string to_toy_hdl(const HwFsm& fsm) {
    std::string out = fmt::format("ip {}\n", fsm.ip);
    for (const auto& p : fsm.ports) {
        out += fmt::format("{} {} {}\n", p.dir == PortDir::In ? "in" : "out", p.name, p.width);
    }
    out += fmt::format("reset {}\n\n", fsm.reset);
    for (const auto& s : fsm.states) {
        out += fmt::format("state {} {{\n", s.id);
        for (const auto& a : s.asserts) out += fmt::format("  {}.valid = 1;\n", a);
        if (!s.message.empty()) {
            std::string port = !s.asserts.empty() ? s.asserts.front()
                               : !s.guards.empty() ? s.guards.front()
                                                   : s.branch_port;
            out += fmt::format("  {}.data = {};\n", port, s.message);
        }
        if (!s.guards.empty()) {
            out += fmt::format("  if ({}.valid) goto {};\n", s.guards.front(), s.next);
        } else if (!s.next.empty()) {
            out += fmt::format("  goto {};\n", s.next);
        }
        if (s.branch == BranchKind::InputData) {
            out += fmt::format("  case ({}.data) {{\n", s.branch_port);
            for (const auto& a : s.arms) out += fmt::format("    {}: goto {};\n", a.cond_label, a.next);
            out += "  }\n";
        } else if (s.branch == BranchKind::Internal) {
            out += "  branch {";
            for (std::size_t i = 0; i < s.arms.size(); ++i) {
                out += fmt::format("{} goto {}", i ? " |" : "", s.arms[i].next);
            }
            out += " }\n";
        }
        out += "}\n";
    }
    return out;
}

}  // namespace vip::hw
