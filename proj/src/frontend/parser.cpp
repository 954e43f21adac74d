#include "vip/frontend/parser.hpp"

#include "vip/frontend/lexer.hpp"

#include <fmt/format.h>

#include <charconv>

namespace vip::frontend {

bool TypeRef::is_dynamic() const {
    for (const auto& d : dims) {
        if (!d) return true;
    }
    return false;
}

std::string TypeRef::to_string() const {
    std::string out;
    switch (base) {
    case Base::Int: out = "int"; break;
    case Base::Bool: out = "bool"; break;
    case Base::Str: out = str_length ? fmt::format("str[{}]", *str_length) : "str"; break;
    case Base::Class: out = class_name; break;
    }
    for (const auto& d : dims) out += d ? fmt::format("[{}]", *d) : "[]";
    return out;
}

const MethodDecl* ClassDecl::find_method(const std::string& method) const {
    for (const auto& m : methods) {
        if (m.name == method) return &m;
    }
    return nullptr;
}

const ClassDecl* Program::find_class(const std::string& name) const {
    for (const auto& c : classes) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

namespace {

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    Program program() {
        Program prog;
        while (is_word("class")) prog.classes.push_back(class_decl());
        const Token& main_tok = peek();
        if (!is_word("main")) fail(main_tok, "expected 'class' or 'main'");
        next();
        prog.main = block();
        prog.main_span = span_from(main_tok);
        if (peek().kind != Token::Kind::End) fail(peek(), "unexpected input after main block");
        return prog;
    }

private:
    ClassDecl class_decl() {
        const Token& start = next();
        ClassDecl cls;
        cls.name = ident("class name");
        expect("{");
        while (is_word("field")) {
            const Token& ft = next();
            FieldDecl f;
            f.name = ident("field name");
            expect(":");
            f.type = type();
            expect(";");
            f.span = span_from(ft);
            cls.fields.push_back(std::move(f));
        }
        while (is_word("def")) cls.methods.push_back(method());
        expect("}");
        cls.span = span_from(start);
        return cls;
    }

    MethodDecl method() {
        const Token& start = next();
        MethodDecl m;
        m.name = ident("method name");
        expect("(");
        if (!is_punct(")")) {
            do {
                const Token& pt = peek();
                ParamDecl p;
                p.name = ident("parameter name");
                expect(":");
                p.type = type();
                p.span = span_from(pt);
                m.params.push_back(std::move(p));
            } while (accept(","));
        }
        expect(")");
        expect("->");
        m.result = type();
        m.body = block();
        m.span = span_from(start);
        return m;
    }

    TypeRef type() {
        const Token& start = peek();
        TypeRef t;
        std::string name = ident("type");
        if (name == "int") {
            t.base = TypeRef::Base::Int;
        } else if (name == "bool") {
            t.base = TypeRef::Base::Bool;
        } else if (name == "str") {
            t.base = TypeRef::Base::Str;
            if (is_punct("[") && peek(1).kind == Token::Kind::Int) {
                next();
                t.str_length = integer("string length");
                expect("]");
            }
        } else {
            t.base = TypeRef::Base::Class;
            t.class_name = name;
        }
        while (accept("[")) {
            if (accept("]")) {
                t.dims.emplace_back(std::nullopt);
                continue;
            }
            t.dims.emplace_back(integer("array length"));
            expect("]");
        }
        t.span = span_from(start);
        return t;
    }

    std::vector<Stmt> block() {
        expect("{");
        std::vector<Stmt> stmts;
        while (!is_punct("}")) {
            if (peek().kind == Token::Kind::End) fail(peek(), "unterminated block");
            stmts.push_back(statement());
        }
        expect("}");
        return stmts;
    }

    Stmt statement() {
        const Token& start = peek();
        Stmt s;
        if (is_word("let")) {
            next();
            s.kind = Stmt::Kind::Let;
            s.name = ident("variable name");
            if (accept(":")) s.type = type();
            expect("=");
            s.exprs.push_back(expression());
            expect(";");
        } else if (is_word("return")) {
            next();
            s.kind = Stmt::Kind::Return;
            s.exprs.push_back(expression());
            expect(";");
        } else if (is_word("if")) {
            next();
            s.kind = Stmt::Kind::If;
            expect("(");
            s.exprs.push_back(expression());
            expect(")");
            s.body = block();
            if (is_word("else")) {
                next();
                if (is_word("if")) {
                    s.else_body.push_back(statement());
                } else {
                    s.else_body = block();
                }
            }
        } else if (is_word("parallel")) {
            next();
            s.kind = Stmt::Kind::Parallel;
            s.body = block();
        } else if (is_word("spawn")) {
            next();
            s.kind = Stmt::Kind::Spawn;
            s.body.push_back(statement());
        } else if (is_word("for")) {
            next();
            s.kind = Stmt::Kind::Loop;
            s.name = "for";
            ident("loop variable");
            if (!is_word("in")) fail(peek(), "expected 'in'");
            next();
            s.exprs.push_back(expression());
            s.body = block();
        } else if (is_word("while")) {
            next();
            s.kind = Stmt::Kind::Loop;
            s.name = "while";
            expect("(");
            s.exprs.push_back(expression());
            expect(")");
            s.body = block();
        } else {
            Expr e = expression();
            if (accept("=")) {
                if (e.kind != Expr::Kind::Name && e.kind != Expr::Kind::Index) {
                    fail(start, "invalid assignment target");
                }
                s.kind = Stmt::Kind::Assign;
                s.exprs.push_back(std::move(e));
                s.exprs.push_back(expression());
            } else {
                s.kind = Stmt::Kind::ExprStmt;
                s.exprs.push_back(std::move(e));
            }
            expect(";");
        }
        s.span = span_from(start);
        return s;
    }

    Expr expression() { return binary(0); }

    static int precedence(const std::string& op) {
        if (op == "||") return 1;
        if (op == "&&") return 2;
        if (op == "==" || op == "!=") return 3;
        if (op == "<" || op == ">" || op == "<=" || op == ">=") return 4;
        if (op == "+" || op == "-") return 5;
        if (op == "*" || op == "/" || op == "%") return 6;
        return 0;
    }

    Expr binary(int min_prec) {
        const Token& start = peek();
        Expr lhs = unary();
        while (peek().kind == Token::Kind::Punct) {
            int prec = precedence(peek().text);
            if (prec == 0 || prec <= min_prec) break;
            std::string op = next().text;
            Expr rhs = binary(prec);
            Expr e;
            e.kind = Expr::Kind::Binary;
            e.text = op;
            e.children.push_back(std::move(lhs));
            e.children.push_back(std::move(rhs));
            e.span = span_from(start);
            lhs = std::move(e);
        }
        return lhs;
    }

    Expr unary() {
        const Token& start = peek();
        if (is_punct("-") || is_punct("!")) {
            Expr e;
            e.kind = Expr::Kind::Unary;
            e.text = next().text;
            e.children.push_back(unary());
            e.span = span_from(start);
            return e;
        }
        return postfix();
    }

    Expr postfix() {
        Expr e = primary();
        while (is_punct("[")) {
            const Token& start = peek();
            next();
            Expr idx;
            idx.kind = Expr::Kind::Index;
            idx.children.push_back(std::move(e));
            idx.children.push_back(expression());
            expect("]");
            idx.span = span_from(start);
            e = std::move(idx);
        }
        return e;
    }

    Expr primary() {
        const Token& start = peek();
        Expr e;
        switch (start.kind) {
        case Token::Kind::Int:
            e.kind = Expr::Kind::IntLit;
            e.text = next().text;
            e.int_value = std::stoll(e.text);
            break;
        case Token::Kind::String:
            e.kind = Expr::Kind::StrLit;
            e.text = next().text;
            break;
        case Token::Kind::Ident: {
            if (start.text == "true" || start.text == "false") {
                e.kind = Expr::Kind::BoolLit;
                e.text = next().text;
                break;
            }
            std::vector<std::string> path{next().text};
            while (is_punct(".")) {
                next();
                path.push_back(ident("member name"));
            }
            if (accept("(")) {
                std::vector<Expr> args;
                if (!is_punct(")")) {
                    do {
                        args.push_back(expression());
                    } while (accept(","));
                }
                expect(")");
                e.children = std::move(args);
                e.text = path.back();
                path.pop_back();
                if (path.empty()) {
                    e.kind = Expr::Kind::FreeCall;
                } else {
                    e.kind = Expr::Kind::MethodCall;
                    e.receiver = std::move(path);
                }
            } else {
                e.kind = Expr::Kind::Name;
                e.receiver = path;
                e.text = path.front();
                for (std::size_t i = 1; i < path.size(); ++i) e.text += "." + path[i];
            }
            break;
        }
        case Token::Kind::Punct:
            if (start.text == "(") {
                next();
                e = expression();
                expect(")");
                return e;
            }
            if (start.text == "[") {
                next();
                e.kind = Expr::Kind::List;
                if (!is_punct("]")) {
                    do {
                        e.children.push_back(expression());
                    } while (accept(","));
                }
                expect("]");
                break;
            }
            fail(start, fmt::format("unexpected '{}'", start.text));
        case Token::Kind::End:
            fail(start, "unexpected end of input");
        }
        e.span = span_from(start);
        return e;
    }

    // --- token helpers ---

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
        return toks_[i];
    }
    const Token& next() {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) ++pos_;
        last_ = &t;
        return t;
    }
    bool is_punct(std::string_view p) const {
        return peek().kind == Token::Kind::Punct && peek().text == p;
    }
    bool is_word(std::string_view w) const {
        return peek().kind == Token::Kind::Ident && peek().text == w;
    }
    bool accept(std::string_view p) {
        if (!is_punct(p)) return false;
        next();
        return true;
    }
    void expect(std::string_view p) {
        if (!accept(p)) fail(peek(), fmt::format("expected '{}'", p));
    }
    std::string ident(std::string_view what) {
        if (peek().kind != Token::Kind::Ident) fail(peek(), fmt::format("expected {}", what));
        return next().text;
    }
    std::uint32_t integer(std::string_view what) {
        if (peek().kind != Token::Kind::Int) fail(peek(), fmt::format("expected {}", what));
        const Token& t = next();
        std::uint32_t v = 0;
        std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (v == 0) fail(t, fmt::format("{} must be positive", what));
        return v;
    }
    SourceSpan span_from(const Token& start) const {
        SourceSpan s{start.line, start.column, start.line, start.column};
        if (last_) {
            s.end_line = last_->line;
            s.end_column = last_->column + static_cast<std::uint32_t>(last_->text.size());
        }
        return s;
    }
    [[noreturn]] void fail(const Token& at, const std::string& what) const {
        throw FrontendError(what, at.line, at.column);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const Token* last_ = nullptr;
};

}  // namespace

Program parse_ast(std::string_view source) {
    return Parser(tokenize(source)).program();
}

}  // namespace vip::frontend
