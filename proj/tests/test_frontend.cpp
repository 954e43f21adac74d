#include "support.hpp"

#include "vip/frontend/object_graph.hpp"
#include "vip/frontend/parser.hpp"
#include "vip/frontend/sessions.hpp"
#include "vip/frontend/validate.hpp"
#include "vip/service/project.hpp"
#include "vip/session/ops.hpp"

#include <doctest.h>

using namespace vip;
using namespace vip::frontend;
using vip::test::S;

namespace {

std::string ecg_source() { return service::read_file(test::data("ecg/ecg.oo")); }

std::vector<ViolationKind> kinds(const std::vector<ConstraintViolation>& v) {
    std::vector<ViolationKind> out;
    for (const auto& x : v) out.push_back(x.kind);
    return out;
}

const char* chain = R"(
class C {
    def work(y: int) -> int { return y; }
}
class B {
    field c: C;
    def step(x: int) -> int {
        let y: int = self.c.work(x);
        return y;
    }
}
class A {
    field b: B;
    def run() -> int {
        let x: int = 3;
        let r: int = self.b.step(x);
        return r;
    }
}
main {
    let c = C();
    let b = B(c);
    let a = A(b);
    a.run();
}
)";

const char* two_calls = R"(
class B {
    def m1(x: int) -> int { let m1r: int = x; return m1r; }
    def m2(y: bool) -> bool { let m2r: bool = y; return m2r; }
}
class A {
    field b: B;
    def run() -> int {
        let r1: int = self.b.m1(1);
        let r2: bool = self.b.m2(true);
        return r1;
    }
}
main {
    let b = B();
    let a = A(b);
    a.run();
}
)";

}  // namespace

TEST_CASE("ECG program: two objects, one edge, helper call inlined") {
    ObjectGraph g = parse_program(ecg_source());
    REQUIRE(g.objects.size() == 2);
    CHECK(g.objects[0].name == "analyzer");
    CHECK(g.objects[0].class_name == "ECGAnalyzer");
    CHECK(g.objects[1].name == "host");
    REQUIRE(g.edges.size() == 1);
    const CallEdge& e = g.edges[0];
    CHECK(e.caller == "host");
    CHECK(e.callee == "analyzer");
    CHECK(e.method == "run_analysis");
    CHECK(e.request_message == "signal");
    CHECK(e.response_message == "classification");
    CHECK(e.order == 0);
    CHECK(g.longest_string_literal == 11);
    CHECK(validate_constraints(g, ecg_source()).empty());
}

TEST_CASE("one object and no calls") {
    ObjectGraph g = parse_program("class A { def f() -> int { return 1; } }\nmain { let a = A(); }");
    CHECK(g.objects.size() == 1);
    CHECK(g.edges.empty());
    CHECK(extract_sessions(g).empty());
}

TEST_CASE("three-object chain matches the hand-built graph") {
    ObjectGraph g = parse_program(chain);
    struct Expected {
        const char* caller;
        const char* callee;
        const char* method;
        std::size_t order;
    };
    const Expected expected[] = {{"a", "b", "step", 0}, {"b", "c", "work", 1}};
    REQUIRE(g.edges.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(g.edges[i].caller == expected[i].caller);
        CHECK(g.edges[i].callee == expected[i].callee);
        CHECK(g.edges[i].method == expected[i].method);
        CHECK(g.edges[i].order == expected[i].order);
    }
    // b->c is made while a->b is being served.
    CHECK(g.edges[0].request_event < g.edges[1].request_event);
    CHECK(g.edges[1].response_event < g.edges[0].response_event);
    CHECK(validate_constraints(g, chain).empty());
}

TEST_CASE("parse errors carry positions") {
    try {
        parse_program("class A {\n  def f( -> int { }\n}\nmain { }");
        FAIL("no error");
    } catch (const FrontendError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() > 0);
    }
    CHECK_THROWS_AS(parse_program("main { ghost.run(); }"), FrontendError);
    CHECK_THROWS_AS(parse_program("class A { def f() -> int { return 1; } }\nmain { let a = A(); a.g(); }"),
                    FrontendError);
}

TEST_CASE("invalid program: dynamic length, append and concurrency") {
    std::string src = service::read_file(test::data("ecg/ecg_invalid.oo"));
    auto v = validate_constraints(parse_program(src), src);
    auto k = kinds(v);
    CHECK(std::count(k.begin(), k.end(), ViolationKind::DynamicAppend) == 1);
    CHECK(std::count(k.begin(), k.end(), ViolationKind::Concurrency) == 1);
    CHECK(std::count(k.begin(), k.end(), ViolationKind::DynamicLength) >= 1);
    for (const auto& x : v) CHECK(x.location.line > 0);
    SUBCASE("the append is reported on its line") {
        auto it = std::find_if(v.begin(), v.end(), [](const auto& x) { return x.kind == ViolationKind::DynamicAppend; });
        CHECK(it->location.line == 21);
    }
    SUBCASE("deterministic and ordered") {
        CHECK(validate_constraints(parse_program(src), src) == v);
        CHECK(std::is_sorted(v.begin(), v.end(), [](const auto& a, const auto& b) {
            return std::tie(a.location.line, a.location.column) < std::tie(b.location.line, b.location.column);
        }));
    }
}

TEST_CASE("spawned calls, loops and conditional calls are rejected") {
    const char* prefix = "class B { def f(x: int) -> int { return x; } }\n"
                         "class A { field b: B;\n";
    const char* suffix = "}\nmain { let b = B(); let a = A(b); a.run(); }";
    auto check = [&](const std::string& body, ViolationKind kind) {
        std::string src = std::string(prefix) + body + suffix;
        auto k = kinds(validate_constraints(parse_program(src), src));
        CHECK_MESSAGE(std::count(k.begin(), k.end(), kind) >= 1, body);
    };
    check("def run() -> int { spawn self.b.f(1); return 0; }", ViolationKind::Concurrency);
    check("def run() -> int { let s: int = 0; while (s < 3) { s = s + 1; } return s; }",
          ViolationKind::UnsupportedConstruct);
    check("def run() -> int { let s: int = 0; if (s < 1) { s = self.b.f(1); } return s; }",
          ViolationKind::UnsupportedConstruct);
    check("def run() -> int { let xs: int[] = []; return 0; }", ViolationKind::DynamicLength);
}

TEST_CASE("ECG sessions: caller view and its dual") {
    ObjectGraph g = parse_program(ecg_source());
    auto host = derive_sessions(g, {}, Perspective::Caller);
    auto analyzer = derive_sessions(g, {}, Perspective::Callee);
    REQUIRE(host.size() == 1);
    CHECK(host[0].caller == "host");
    CHECK(host[0].callee == "analyzer");
    CHECK(session::to_notation(host[0].session) == "!signal(128).?classification(88)");
    CHECK(session::dual(host[0].session) == analyzer[0].session);
}

TEST_CASE("two sequential calls give a four-transition trace") {
    ObjectGraph g = parse_program(two_calls);
    auto s = derive_sessions(g);
    REQUIRE(s.size() == 1);
    auto traces = session::enumerate_traces(s[0].session);
    REQUIRE(traces.size() == 1);
    CHECK(session::to_string(traces[0]) == "!x(32).?m1r(32).!y(1).?m2r(1)");
}

TEST_CASE("session size is twice the edge count and views are duals") {
    for (const char* src : {chain, two_calls}) {
        ObjectGraph g = parse_program(src);
        auto callers = derive_sessions(g, {}, Perspective::Caller);
        auto callees = derive_sessions(g, {}, Perspective::Callee);
        REQUIRE(callers.size() == callees.size());
        for (std::size_t i = 0; i < callers.size(); ++i) {
            std::size_t edges = std::count_if(g.edges.begin(), g.edges.end(), [&](const CallEdge& e) {
                return e.caller == callers[i].caller && e.callee == callers[i].callee;
            });
            CHECK(callers[i].session.transition_count() == 2 * edges);
            CHECK(session::dual(callers[i].session) == callees[i].session);
        }
    }
}

TEST_CASE("width policy") {
    WidthPolicy p;
    using session::PayloadType;
    CHECK(annotate_payload(PayloadType::integer(), p).width == 32);
    CHECK(annotate_payload(PayloadType::boolean(), p).width == 1);
    CHECK(annotate_payload(PayloadType::fixed_string(11), p).width == 8 * 11);
    CHECK(annotate_payload(PayloadType::array(PayloadType::integer(), 4), p).width == 4 * 32);
    SUBCASE("bare strings need a bound") {
        CHECK_THROWS_AS(annotate_payload(PayloadType::fixed_string(0), p), std::invalid_argument);
        p.string_characters = 6;
        CHECK(annotate_payload(PayloadType::fixed_string(0), p).width == 48);
    }
    SUBCASE("annotate_widths is idempotent") {
        ObjectGraph g = parse_program(two_calls);
        auto abstract = extract_sessions(g);
        session::SessionLts once = annotate_widths(abstract[0].session, p);
        CHECK(annotate_widths(once, p) == once);
        CHECK_NOTHROW(once.validate(true));
    }
}
