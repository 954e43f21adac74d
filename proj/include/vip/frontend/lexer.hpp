#pragma once

#include "vip/frontend/ast.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace vip::frontend {

struct Token {
    enum class Kind { Ident, Int, String, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    std::uint32_t line = 1;
    std::uint32_t column = 1;
};

/// Splits `.oo` source into tokens. `#` and `//` start line comments.
std::vector<Token> tokenize(std::string_view source);

}  // namespace vip::frontend
