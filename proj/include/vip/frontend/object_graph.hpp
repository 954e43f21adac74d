#pragma once

#include "vip/frontend/ast.hpp"
#include "vip/session/label.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace vip::frontend {

enum class ViolationKind {
    DynamicLength,
    DynamicAppend,
    Concurrency,
    UnsupportedConstruct,
    NonSequentialCall,
};

std::string_view to_string(ViolationKind kind);

struct ConstraintViolation {
    ViolationKind kind = ViolationKind::UnsupportedConstruct;
    SourceSpan location;
    std::string message;

    bool operator==(const ConstraintViolation&) const = default;
};

struct FieldBinding {
    std::string name;
    TypeRef type;
    /// Object bound to a class-typed field; empty for value fields.
    std::string object;
};

/// An instance created in `main` (`let host = SimulationHost(analyzer);`).
struct ObjectDecl {
    std::string name;
    std::string class_name;
    std::vector<FieldBinding> fields;
    std::vector<std::string> methods;
    SourceSpan span;
};

/// One object-to-object method invocation. Payloads are abstract (no
/// widths yet) and follow the declared parameter and result types.
struct CallEdge {
    std::string caller;
    std::string callee;
    std::string method;
    std::vector<std::string> parameter_names;
    std::vector<session::PayloadType> arguments;
    session::PayloadType result;
    std::string request_message;
    std::string response_message;
    /// Program order of the request; edges are stored in this order.
    std::size_t order = 0;
    /// Positions of the request and response in the global event sequence.
    /// A call made while serving another call nests strictly inside it.
    std::size_t request_event = 0;
    std::size_t response_event = 0;
    /// Made inside an if/else arm.
    bool conditional = false;
    SourceSpan span;

    /// One argument: its payload. Several: a bit vector of their sum.
    /// None: a 1-bit strobe.
    session::PayloadType request_payload() const;
};

struct ObjectGraph {
    std::vector<ObjectDecl> objects;
    std::vector<CallEdge> edges;
    /// Characters in the longest string literal; bounds bare `str`.
    std::uint32_t longest_string_literal = 0;
    /// Call-structure problems found while tracing: re-entrant callbacks
    /// and recursion. Reported by validate_constraints.
    std::vector<ConstraintViolation> call_findings;

    const ObjectDecl* find_object(std::string_view name) const;
};

/// Parses a program and traces every call reachable from `main`.
/// Throws FrontendError on syntax errors and on references to undeclared
/// classes, objects, fields or methods.
ObjectGraph parse_program(std::string_view source);

/// Builds the graph from an already parsed program.
ObjectGraph build_object_graph(const Program& program);

session::PayloadType payload_of(const TypeRef& type);

}  // namespace vip::frontend
