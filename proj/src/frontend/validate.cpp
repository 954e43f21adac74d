#include "vip/frontend/validate.hpp"

#include "vip/frontend/parser.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <tuple>

namespace vip::frontend {

namespace {

constexpr std::array<std::string_view, 7> growth_methods = {"append", "push", "extend", "insert",
                                                            "pop",    "remove", "clear"};

class Checker {
public:
    Checker(const ObjectGraph& graph, const Program& program) : g_(graph), prog_(program) {}

    std::vector<ConstraintViolation> run() {
        for (const auto& c : prog_.classes) {
            cls_ = &c;
            for (const auto& f : c.fields) type(f.type, fmt::format("field '{}'", f.name));
            for (const auto& m : c.methods) {
                for (const auto& p : m.params) type(p.type, fmt::format("parameter '{}'", p.name));
                type(m.result, fmt::format("result of '{}'", m.name));
                stmts(m.body);
            }
        }
        cls_ = nullptr;
        stmts(prog_.main);

        for (const auto& f : g_.call_findings) out_.push_back(f);
        for (const auto& e : g_.edges) {
            if (e.conditional) {
                add(ViolationKind::UnsupportedConstruct, e.span,
                    fmt::format("call to '{}.{}' inside a conditional branch", e.callee, e.method));
            }
        }

        auto key = [](const ConstraintViolation& v) {
            return std::tie(v.location.line, v.location.column, v.kind, v.message);
        };
        std::sort(out_.begin(), out_.end(),
                  [&](const auto& a, const auto& b) { return key(a) < key(b); });
        out_.erase(std::unique(out_.begin(), out_.end(),
                               [](const auto& a, const auto& b) {
                                   return a.location.line == b.location.line &&
                                          a.location.column == b.location.column &&
                                          a.kind == b.kind;
                               }),
                   out_.end());
        return std::move(out_);
    }

private:
    void type(const TypeRef& t, const std::string& what) {
        if (t.is_dynamic()) {
            add(ViolationKind::DynamicLength, t.span,
                fmt::format("{} has variable-length type '{}'", what, t.to_string()));
        }
    }

    void stmts(const std::vector<Stmt>& body) {
        for (const auto& s : body) stmt(s);
    }

    void stmt(const Stmt& s) {
        switch (s.kind) {
        case Stmt::Kind::Let:
            if (s.type) type(*s.type, fmt::format("local '{}'", s.name));
            break;
        case Stmt::Kind::Parallel:
            add(ViolationKind::Concurrency, s.span, "parallel block runs calls concurrently");
            break;
        case Stmt::Kind::Spawn:
            add(ViolationKind::Concurrency, s.span, "spawned statement runs concurrently");
            break;
        case Stmt::Kind::Loop:
            add(ViolationKind::UnsupportedConstruct, s.span,
                fmt::format("'{}' loop has no fixed session length", s.name));
            break;
        default:
            break;
        }
        for (const auto& e : s.exprs) expr(e);
        stmts(s.body);
        stmts(s.else_body);
    }

    void expr(const Expr& e) {
        if (e.kind == Expr::Kind::List && e.children.empty()) {
            add(ViolationKind::DynamicLength, e.span, "empty list literal has no fixed length");
        }
        if (e.kind == Expr::Kind::MethodCall && !targets_method(e) &&
            std::find(growth_methods.begin(), growth_methods.end(), e.text) !=
                growth_methods.end()) {
            std::string receiver = e.receiver.front();
            for (std::size_t i = 1; i < e.receiver.size(); ++i) receiver += "." + e.receiver[i];
            add(ViolationKind::DynamicAppend, e.span,
                fmt::format("'{}.{}' changes the length of a message value", receiver, e.text));
        }
        for (const auto& c : e.children) expr(c);
    }

    /// True when the receiver is an object whose class declares the method.
    bool targets_method(const Expr& e) const {
        const ClassDecl* cls = nullptr;
        std::size_t from = 1;
        if (cls_ && e.receiver.front() == "self") {
            cls = cls_;
        } else if (!cls_) {
            if (const ObjectDecl* o = g_.find_object(e.receiver.front())) {
                cls = prog_.find_class(o->class_name);
            }
        }
        for (std::size_t i = from; cls && i < e.receiver.size(); ++i) {
            const ClassDecl* next = nullptr;
            for (const auto& f : cls->fields) {
                if (f.name == e.receiver[i] && f.type.base == TypeRef::Base::Class) {
                    next = prog_.find_class(f.type.class_name);
                }
            }
            cls = next;
        }
        return cls && cls->find_method(e.text);
    }

    void add(ViolationKind kind, SourceSpan span, std::string message) {
        out_.push_back({kind, span, std::move(message)});
    }

    const ObjectGraph& g_;
    const Program& prog_;
    const ClassDecl* cls_ = nullptr;
    std::vector<ConstraintViolation> out_;
};

}  // namespace

std::vector<ConstraintViolation> validate_constraints(const ObjectGraph& graph,
                                                      const Program& program) {
    return Checker(graph, program).run();
}

std::vector<ConstraintViolation> validate_constraints(const ObjectGraph& graph,
                                                      std::string_view source) {
    return validate_constraints(graph, parse_ast(source));
}

}  // namespace vip::frontend
