#include "vip/frontend/object_graph.hpp"

#include "vip/frontend/parser.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <set>

namespace vip::frontend {

using session::PayloadType;

std::string_view to_string(ViolationKind kind) {
    switch (kind) {
    case ViolationKind::DynamicLength: return "dynamic-length";
    case ViolationKind::DynamicAppend: return "dynamic-append";
    case ViolationKind::Concurrency: return "concurrency";
    case ViolationKind::UnsupportedConstruct: return "unsupported-construct";
    case ViolationKind::NonSequentialCall: return "non-sequential-call";
    }
    return "unsupported-construct";
}

PayloadType CallEdge::request_payload() const {
    if (arguments.empty()) return PayloadType::boolean();
    if (arguments.size() == 1) return arguments.front();
    return PayloadType::tuple(arguments);
}

const ObjectDecl* ObjectGraph::find_object(std::string_view name) const {
    for (const auto& o : objects) {
        if (o.name == name) return &o;
    }
    return nullptr;
}

PayloadType payload_of(const TypeRef& type) {
    PayloadType base;
    switch (type.base) {
    case TypeRef::Base::Int: base = PayloadType::integer(); break;
    case TypeRef::Base::Bool: base = PayloadType::boolean(); break;
    case TypeRef::Base::Str: base = PayloadType::fixed_string(type.str_length.value_or(0)); break;
    case TypeRef::Base::Class:
        throw FrontendError(
            fmt::format("object of class '{}' cannot be exchanged as a message", type.class_name),
            type.span.line, type.span.column);
    }
    // Dynamic dimensions become zero-length arrays; validation reports them
    // and annotation refuses to give them a width.
    for (const auto& d : type.dims) base = PayloadType::array(base, d.value_or(0));
    return base;
}

namespace {

void collect_returns(const std::vector<Stmt>& body, std::vector<const Expr*>& out) {
    for (const auto& s : body) {
        if (s.kind == Stmt::Kind::Return) out.push_back(&s.exprs.front());
        collect_returns(s.body, out);
        collect_returns(s.else_body, out);
    }
}

std::string response_name(const MethodDecl& m) {
    std::vector<const Expr*> returns;
    collect_returns(m.body, returns);
    if (returns.empty()) return m.name + "_result";
    const Expr* first = returns.front();
    if (first->kind != Expr::Kind::Name || first->receiver.size() != 1) return m.name + "_result";
    for (const Expr* r : returns) {
        if (r->kind != Expr::Kind::Name || r->text != first->text) return m.name + "_result";
    }
    return first->text;
}

void longest_literal(const Expr& e, std::uint32_t& best) {
    if (e.kind == Expr::Kind::StrLit) best = std::max(best, static_cast<std::uint32_t>(e.text.size()));
    for (const auto& c : e.children) longest_literal(c, best);
}

void longest_literal(const std::vector<Stmt>& body, std::uint32_t& best) {
    for (const auto& s : body) {
        for (const auto& e : s.exprs) longest_literal(e, best);
        longest_literal(s.body, best);
        longest_literal(s.else_body, best);
    }
}

struct Frame {
    std::string object;
    std::string method;
};

class Tracer {
public:
    Tracer(const Program& program, ObjectGraph& graph) : prog_(program), g_(graph) {}

    void run() {
        for (const auto& s : prog_.main) main_stmt(s);
    }

private:
    // --- main block ---

    void main_stmt(const Stmt& s) {
        if (s.kind == Stmt::Kind::Let && !s.exprs.empty() &&
            s.exprs.front().kind == Expr::Kind::FreeCall &&
            prog_.find_class(s.exprs.front().text)) {
            instantiate(s.name, s.exprs.front());
            return;
        }
        if (s.kind == Stmt::Kind::Let) main_locals_.insert(s.name);
        for (const auto& e : s.exprs) walk(e);
        for (const auto& b : s.body) main_stmt(b);
        for (const auto& b : s.else_body) main_stmt(b);
    }

    void instantiate(const std::string& name, const Expr& call) {
        if (objects_.count(name) || main_locals_.count(name)) {
            throw FrontendError(fmt::format("'{}' is already declared", name), call.span.line,
                                call.span.column);
        }
        const ClassDecl& cls = *prog_.find_class(call.text);
        if (call.children.size() > cls.fields.size()) {
            throw FrontendError(fmt::format("class '{}' has {} fields but {} arguments were given",
                                            cls.name, cls.fields.size(), call.children.size()),
                                call.span.line, call.span.column);
        }
        ObjectDecl obj;
        obj.name = name;
        obj.class_name = cls.name;
        obj.span = call.span;
        for (std::size_t i = 0; i < cls.fields.size(); ++i) {
            const FieldDecl& f = cls.fields[i];
            FieldBinding fb{f.name, f.type, {}};
            if (f.type.base == TypeRef::Base::Class) {
                if (!prog_.find_class(f.type.class_name)) {
                    throw FrontendError(fmt::format("undeclared class '{}'", f.type.class_name),
                                        f.type.span.line, f.type.span.column);
                }
                if (i >= call.children.size()) {
                    throw FrontendError(
                        fmt::format("field '{}' of '{}' is not bound to an object", f.name, name),
                        call.span.line, call.span.column);
                }
                const Expr& arg = call.children[i];
                auto it = objects_.find(arg.text);
                if (arg.kind != Expr::Kind::Name || it == objects_.end()) {
                    throw FrontendError(fmt::format("undeclared object '{}'", arg.text),
                                        arg.span.line, arg.span.column);
                }
                const ObjectDecl& target = g_.objects[it->second];
                if (target.class_name != f.type.class_name) {
                    throw FrontendError(fmt::format("field '{}' expects {} but '{}' is a {}",
                                                    f.name, f.type.class_name, target.name,
                                                    target.class_name),
                                        arg.span.line, arg.span.column);
                }
                fb.object = target.name;
            } else if (i < call.children.size()) {
                walk(call.children[i]);
            }
            obj.fields.push_back(std::move(fb));
        }
        for (const auto& m : cls.methods) obj.methods.push_back(m.name);
        objects_[name] = g_.objects.size();
        g_.objects.push_back(std::move(obj));
    }

    // --- expression walk, shared by main and method bodies ---

    void walk(const Expr& e) {
        if (e.kind == Expr::Kind::FreeCall && prog_.find_class(e.text)) {
            throw FrontendError(
                fmt::format("objects may only be created by a 'let' in main ('{}')", e.text),
                e.span.line, e.span.column);
        }
        for (const auto& c : e.children) walk(c);
        if (e.kind == Expr::Kind::MethodCall) call(e);
    }

    void call(const Expr& e) {
        const auto& path = e.receiver;
        if (stack_.empty()) {
            auto it = objects_.find(path.front());
            if (it == objects_.end()) {
                if (main_locals_.count(path.front())) return;  // method on a value
                throw FrontendError(fmt::format("undeclared object '{}'", path.front()),
                                    e.span.line, e.span.column);
            }
            std::string target = resolve(g_.objects[it->second], path, 1, e);
            if (target.empty()) return;
            // Calls from main start a transaction; they are not protocol edges.
            invoke(target, lookup(target, e), e);
            return;
        }

        const Frame& top = stack_.back();
        if (path.front() != "self") {
            if (locals_.back().count(path.front())) return;
            throw FrontendError(fmt::format("undeclared object '{}'", path.front()), e.span.line,
                                e.span.column);
        }
        const ObjectDecl& self = g_.objects[objects_.at(top.object)];
        if (path.size() == 1) {
            const MethodDecl& m = lookup(self.name, e);
            for (const auto& f : stack_) {
                if (f.object == self.name && f.method == m.name) {
                    finding(ViolationKind::NonSequentialCall, e.span,
                            fmt::format("recursive call to '{}.{}'", self.name, m.name));
                    return;
                }
            }
            invoke(self.name, m, e);  // intra-object: no edge
            return;
        }
        std::string target = resolve(self, path, 1, e);
        if (target.empty()) return;
        const MethodDecl& m = lookup(target, e);
        for (const auto& f : stack_) {
            if (f.object == target) {
                finding(ViolationKind::NonSequentialCall, e.span,
                        fmt::format("'{}' calls back into '{}' while '{}' is waiting for a reply",
                                    top.object, target, target));
                return;
            }
        }

        CallEdge edge;
        edge.caller = top.object;
        edge.callee = target;
        edge.method = m.name;
        for (const auto& p : m.params) {
            edge.parameter_names.push_back(p.name);
            edge.arguments.push_back(payload_of(p.type));
        }
        edge.result = payload_of(m.result);
        edge.request_message = m.params.size() == 1 ? m.params.front().name : m.name;
        edge.response_message = response_name(m);
        edge.order = g_.edges.size();
        edge.request_event = event_++;
        edge.conditional = conditional_ > 0;
        edge.span = e.span;
        if (e.children.size() != m.params.size()) {
            throw FrontendError(fmt::format("'{}.{}' takes {} arguments but {} were given", target,
                                            m.name, m.params.size(), e.children.size()),
                                e.span.line, e.span.column);
        }
        std::size_t index = g_.edges.size();
        g_.edges.push_back(std::move(edge));
        invoke(target, m, e);
        g_.edges[index].response_event = event_++;
    }

    /// Follows `path[from..]` through class-typed fields. Returns the object
    /// reached, or empty when the path ends at a value field.
    std::string resolve(const ObjectDecl& start, const std::vector<std::string>& path,
                        std::size_t from, const Expr& e) {
        const ObjectDecl* cur = &start;
        for (std::size_t i = from; i < path.size(); ++i) {
            auto f = std::find_if(cur->fields.begin(), cur->fields.end(),
                                  [&](const FieldBinding& fb) { return fb.name == path[i]; });
            if (f == cur->fields.end()) {
                throw FrontendError(
                    fmt::format("'{}' has no field '{}'", cur->class_name, path[i]), e.span.line,
                    e.span.column);
            }
            if (f->object.empty()) return {};
            cur = &g_.objects[objects_.at(f->object)];
        }
        return cur->name;
    }

    const MethodDecl& lookup(const std::string& object, const Expr& e) {
        const ObjectDecl& o = g_.objects[objects_.at(object)];
        const MethodDecl* m = prog_.find_class(o.class_name)->find_method(e.text);
        if (!m) {
            throw FrontendError(fmt::format("undeclared method '{}.{}'", o.class_name, e.text),
                                e.span.line, e.span.column);
        }
        return *m;
    }

    void invoke(const std::string& object, const MethodDecl& m, const Expr&) {
        stack_.push_back({object, m.name});
        std::set<std::string> scope{"self"};
        for (const auto& p : m.params) scope.insert(p.name);
        locals_.push_back(std::move(scope));
        int saved = conditional_;
        // A callee body runs unconditionally once it has been called.
        conditional_ = 0;
        body(m.body);
        conditional_ = saved;
        locals_.pop_back();
        stack_.pop_back();
    }

    void body(const std::vector<Stmt>& stmts) {
        for (const auto& s : stmts) {
            if (s.kind == Stmt::Kind::Let) locals_.back().insert(s.name);
            for (const auto& e : s.exprs) walk(e);
            if (s.kind == Stmt::Kind::If) {
                ++conditional_;
                body(s.body);
                body(s.else_body);
                --conditional_;
            } else {
                body(s.body);
            }
        }
    }

    void finding(ViolationKind kind, SourceSpan span, std::string message) {
        g_.call_findings.push_back({kind, span, std::move(message)});
    }

    const Program& prog_;
    ObjectGraph& g_;
    std::map<std::string, std::size_t> objects_;
    std::set<std::string> main_locals_;
    std::vector<Frame> stack_;
    std::vector<std::set<std::string>> locals_;
    std::size_t event_ = 0;
    int conditional_ = 0;
};

}  // namespace

ObjectGraph build_object_graph(const Program& program) {
    std::set<std::string> names;
    for (const auto& c : program.classes) {
        if (!names.insert(c.name).second) {
            throw FrontendError(fmt::format("class '{}' is declared twice", c.name), c.span.line,
                                c.span.column);
        }
        std::set<std::string> methods;
        for (const auto& m : c.methods) {
            if (!methods.insert(m.name).second) {
                throw FrontendError(fmt::format("method '{}.{}' is declared twice", c.name, m.name),
                                    m.span.line, m.span.column);
            }
        }
    }
    ObjectGraph graph;
    Tracer(program, graph).run();
    for (const auto& c : program.classes) {
        for (const auto& m : c.methods) longest_literal(m.body, graph.longest_string_literal);
    }
    longest_literal(program.main, graph.longest_string_literal);
    return graph;
}

ObjectGraph parse_program(std::string_view source) {
    return build_object_graph(parse_ast(source));
}

}  // namespace vip::frontend
