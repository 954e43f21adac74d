#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vip::frontend {

struct SourceSpan {
    std::uint32_t line = 0;
    std::uint32_t column = 0;
    std::uint32_t end_line = 0;
    std::uint32_t end_column = 0;

    auto operator<=>(const SourceSpan&) const = default;
};

/// Syntax errors and unresolved references, with a 1-based position.
class FrontendError : public std::runtime_error {
public:
    FrontendError(const std::string& message, std::uint32_t line, std::uint32_t column);
    std::uint32_t line() const { return line_; }
    std::uint32_t column() const { return column_; }

private:
    std::uint32_t line_;
    std::uint32_t column_;
};

struct TypeRef {
    enum class Base { Int, Bool, Str, Class };
    Base base = Base::Int;
    std::string class_name;
    /// `str[N]`; empty for a bare `str`, whose bound comes from the width policy.
    std::optional<std::uint32_t> str_length;
    /// Array dimensions, outermost last; nullopt marks a dynamic `[]`.
    std::vector<std::optional<std::uint32_t>> dims;
    SourceSpan span;

    bool is_dynamic() const;
    std::string to_string() const;
};

struct Expr {
    enum class Kind { IntLit, BoolLit, StrLit, Name, List, Index, Unary, Binary, MethodCall, FreeCall };
    Kind kind = Kind::Name;
    SourceSpan span;
    /// Name, literal text, operator, or called method / function name.
    std::string text;
    std::int64_t int_value = 0;
    /// MethodCall receiver path, e.g. {"self", "analyzer"}.
    std::vector<std::string> receiver;
    /// List elements, Index {base, index}, Unary {operand}, Binary {lhs, rhs}, call arguments.
    std::vector<Expr> children;
};

struct Stmt {
    enum class Kind { Let, Assign, ExprStmt, Return, If, Parallel, Spawn, Loop };
    Kind kind = Kind::ExprStmt;
    SourceSpan span;
    /// Let: bound name. Loop: "for" or "while".
    std::string name;
    std::optional<TypeRef> type;
    /// Let {value}; Assign {target, value}; ExprStmt/Return {expr}; If/Loop {condition}.
    std::vector<Expr> exprs;
    std::vector<Stmt> body;
    std::vector<Stmt> else_body;
};

struct ParamDecl {
    std::string name;
    TypeRef type;
    SourceSpan span;
};

struct MethodDecl {
    std::string name;
    std::vector<ParamDecl> params;
    TypeRef result;
    std::vector<Stmt> body;
    SourceSpan span;
};

struct FieldDecl {
    std::string name;
    TypeRef type;
    SourceSpan span;
};

struct ClassDecl {
    std::string name;
    std::vector<FieldDecl> fields;
    std::vector<MethodDecl> methods;
    SourceSpan span;

    const MethodDecl* find_method(const std::string& method) const;
};

struct Program {
    std::vector<ClassDecl> classes;
    std::vector<Stmt> main;
    SourceSpan main_span;

    const ClassDecl* find_class(const std::string& name) const;
};

}  // namespace vip::frontend
