#pragma once

#include "vip/frontend/ast.hpp"

#include <string_view>

namespace vip::frontend {

/// Parses the restricted object-oriented language:
///
///   program   := classdecl* "main" block
///   classdecl := "class" NAME "{" field* method* "}"
///   field     := "field" NAME ":" type ";"
///   method    := "def" NAME "(" [param ("," param)*] ")" "->" type block
///   type      := ("int" | "bool" | "str" ["[" INT "]"] | NAME) ("[" [INT] "]")*
///   stmt      := "let" NAME [":" type] "=" expr ";" | target "=" expr ";"
///              | expr ";" | "return" expr ";" | "if" "(" expr ")" block ["else" block]
///              | "parallel" block | "spawn" stmt
///              | "for" NAME "in" expr block | "while" "(" expr ")" block
///
/// Concurrency and loop constructs are kept in the tree so that
/// validation can report them; they are never executed.
Program parse_ast(std::string_view source);

}  // namespace vip::frontend
