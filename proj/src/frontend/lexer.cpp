#include "vip/frontend/lexer.hpp"

#include <fmt/format.h>

#include <array>
#include <cctype>

namespace vip::frontend {

FrontendError::FrontendError(const std::string& message, std::uint32_t line, std::uint32_t column)
    : std::runtime_error(fmt::format("{}:{}: {}", line, column, message)),
      line_(line),
      column_(column) {}

std::vector<Token> tokenize(std::string_view src) {
    static constexpr std::array<std::string_view, 8> two_char = {"->", "==", "!=", "<=", ">=",
                                                                 "&&", "||", "::"};
    std::vector<Token> tokens;
    std::uint32_t line = 1;
    std::uint32_t column = 1;
    std::size_t i = 0;

    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
    };

    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }

        Token tok;
        tok.line = line;
        tok.column = column;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = i;
            while (i < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
                advance(1);
            }
            tok.kind = Token::Kind::Ident;
            tok.text = std::string(src.substr(start, i - start));
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = i;
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) advance(1);
            if (i < src.size() && src[i] == '.' && i + 1 < src.size() &&
                std::isdigit(static_cast<unsigned char>(src[i + 1]))) {
                throw FrontendError("floating-point literals are not synthesizable", tok.line,
                                    tok.column);
            }
            tok.kind = Token::Kind::Int;
            tok.text = std::string(src.substr(start, i - start));
        } else if (c == '"') {
            advance(1);
            std::string text;
            while (i < src.size() && src[i] != '"') {
                if (src[i] == '\n') throw FrontendError("unterminated string literal", tok.line, tok.column);
                if (src[i] == '\\' && i + 1 < src.size()) advance(1);
                text += src[i];
                advance(1);
            }
            if (i >= src.size()) throw FrontendError("unterminated string literal", tok.line, tok.column);
            advance(1);
            tok.kind = Token::Kind::String;
            tok.text = std::move(text);
        } else {
            tok.kind = Token::Kind::Punct;
            std::string_view rest = src.substr(i);
            std::size_t len = 1;
            for (auto op : two_char) {
                if (rest.starts_with(op)) len = 2;
            }
            static constexpr std::string_view single = "{}()[];:,.=<>+-*/%!&|";
            if (len == 1 && single.find(c) == std::string_view::npos) {
                throw FrontendError(fmt::format("unexpected character '{}'", c), line, column);
            }
            tok.text = std::string(src.substr(i, len));
            advance(len);
        }
        tokens.push_back(std::move(tok));
    }
    tokens.push_back(Token{Token::Kind::End, "", line, column});
    return tokens;
}

}  // namespace vip::frontend
