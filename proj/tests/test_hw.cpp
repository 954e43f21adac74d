#include "support.hpp"

#include "vip/hw/candidates.hpp"
#include "vip/hw/classify.hpp"
#include "vip/hw/fsm_json.hpp"
#include "vip/hw/toy_hdl.hpp"
#include "vip/session/ops.hpp"

#include <doctest.h>

#include <set>

using namespace vip;
using namespace vip::hw;
using session::ActionKind;
using vip::test::S;

namespace {

const char* two_state = R"({
  "ip": "echo",
  "reset": "WAIT",
  "ports": [{"name": "A", "dir": "in", "width": 8}, {"name": "B", "dir": "out", "width": 8}],
  "states": [
    {"id": "WAIT", "guard_valid": ["A"], "next": "SEND"},
    {"id": "SEND", "assert": ["B"], "next": "WAIT"}
  ]
})";

std::vector<std::string> trace_strings(const session::SessionLts& s) {
    std::vector<std::string> out;
    for (const auto& t : session::enumerate_traces(s)) out.push_back(session::to_string(t));
    std::sort(out.begin(), out.end());
    return out;
}

/// Random machine whose only cycles pass through reset. Every state is
/// reachable through the chain i -> i+1.
HwFsm random_fsm(std::mt19937_64& rng, std::size_t n) {
    HwFsm f;
    f.ip = "rnd";
    f.ports = {{"din", PortDir::In, 8}, {"dout", PortDir::Out, 16}, {"sel", PortDir::In, 2}};
    for (std::size_t i = 0; i < n; ++i) {
        FsmState s;
        s.id = "S" + std::to_string(i);
        f.states.push_back(std::move(s));
    }
    f.reset = "S0";
    auto succ = [&](std::size_t i) { return i + 1 < n ? f.states[i + 1].id : f.reset; };
    auto later = [&](std::size_t i) {
        std::size_t span = n - i;  // i+1..n-1 plus reset
        std::size_t j = i + 1 + rng() % span;
        return j < n ? f.states[j].id : f.reset;
    };
    for (std::size_t i = 0; i < n; ++i) {
        FsmState& s = f.states[i];
        switch (rng() % 4) {
        case 0: s.next = succ(i); break;
        case 1:
            s.asserts = {"dout"};
            s.message = "m" + std::to_string(rng() % 3);
            s.next = succ(i);
            break;
        case 2:
            s.guards = {"din"};
            s.next = succ(i);
            break;
        default:
            s.branch = BranchKind::InputData;
            s.branch_port = "sel";
            s.arms = {{"l0", succ(i)}, {"l1", later(i)}};
            break;
        }
    }
    return f;
}

/// Independent enumeration of tag sequences on one pass from reset back to
/// reset, reading the raw state annotations.
void brute_paths(const HwFsm& f, const std::string& at, bool first, std::string prefix,
                 std::set<std::string>& out) {
    if (!first && at == f.reset) {
        out.insert(prefix);
        return;
    }
    const FsmState& s = *f.find_state(at);
    auto add = [&](const std::string& lbl) { return prefix.empty() ? lbl : prefix + "." + lbl; };
    if (!s.asserts.empty()) {
        brute_paths(f, s.next, false, add("!" + s.message + "(16)"), out);
    } else if (!s.guards.empty()) {
        brute_paths(f, s.next, false, add("?din(8)"), out);
    } else if (s.branch == BranchKind::InputData) {
        for (const auto& a : s.arms) brute_paths(f, a.next, false, add("&" + a.cond_label + "(2)"), out);
    } else {
        brute_paths(f, s.next, false, prefix, out);
    }
}

}  // namespace

TEST_CASE("interchange JSON: two-state machine") {
    HwFsm f = parse_fsm(two_state);
    CHECK(f.ip == "echo");
    CHECK(f.states.size() == 2);
    auto t = f.transitions();
    REQUIRE(t.size() == 2);
    CHECK(t[0].from == "WAIT");
    CHECK(t[0].to == "SEND");
    CHECK(t[0].guard == "A.valid");
    CHECK(fsm_from_json(to_json(f)) == f);
}

TEST_CASE("ECG analyzer machine") {
    HwFsm f = load_fsm(test::data("ecg/analyzer.fsm"));
    CHECK(f.ip == "ecg_analyzer");
    CHECK(f.states.size() == 7);
    // IDLE, four receive beats, two DECIDE arms, TX back to IDLE.
    CHECK(f.transitions().size() == 8);
    CHECK(f.find_state("DECIDE")->branch == BranchKind::Internal);
}

TEST_CASE("malformed machines are rejected") {
    CHECK_THROWS_AS(parse_fsm("{"), std::exception);
    CHECK_THROWS_AS(parse_toy_hdl("ip x\nin a 8\nstate S { goto T }"), FsmError);
    CHECK_THROWS_AS(parse_toy_hdl("ip x\nin a 0\nstate S { if (a.valid) goto S }"), FsmError);
    CHECK_THROWS_AS(parse_toy_hdl("ip x\nin a 8\nstate S { goto S }\nstate U { goto S }"), FsmError);
    SUBCASE("multiple session patterns in one state") {
        HwFsm f = parse_fsm(two_state);
        f.states[1].guards = {"A"};
        CHECK_THROWS_WITH_AS(classify_actions(f), doctest::Contains("multiple session patterns"), FsmError);
    }
}

TEST_CASE("toy HDL patterns") {
    SUBCASE("valid strobe with data names the message") {
        HwFsm f = parse_toy_hdl("ip t\nout res 8\nstate S { res.valid = 1; res.data = B; goto S }");
        auto l = classify_actions(f);
        REQUIRE(l.tags[0]);
        CHECK(l.tags[0]->action == ActionKind::Send);
        CHECK(l.tags[0]->message == "B");
        CHECK(session::to_string(l.tags[0]->label()) == "!B(8)");
    }
    SUBCASE("guarded goto is a receive") {
        HwFsm f = parse_toy_hdl("ip t\nin req 16\nstate S { if (req.valid) goto S }");
        CHECK(f.states[0].guards == std::vector<std::string>{"req"});
        CHECK(classify_actions(f).tags[0]->action == ActionKind::Recv);
    }
    SUBCASE("idle-only machine") {
        HwFsm f = parse_toy_hdl("ip t\nstate IDLE { goto IDLE }");
        CHECK(f.states.size() == 1);
        CHECK(f.transitions().size() == 1);
        HwFsm g = parse_toy_hdl("ip t\nstate IDLE { }");
        CHECK(g.transitions().empty());
        CHECK_FALSE(classify_actions(g).tags[0]);
    }
    SUBCASE("round trip through text and JSON") {
        for (const char* path : {"ecg/analyzer.fsm", "ecg/analyzer_control.fsm", "ecg/analyzer_mutated.fsm"}) {
            HwFsm f = load_fsm(test::data(path));
            CHECK(parse_toy_hdl(to_toy_hdl(f)) == f);
            CHECK(fsm_from_json(to_json(f)) == f);
        }
    }
}

TEST_CASE("classification of the pattern table") {
    HwFsm f = parse_toy_hdl(R"(
ip t
in sel 2
in a 8
out done 1
state W { if (a.valid) goto D }
state D { case (sel.data) { x: goto F  y: goto W } }
state F { done.valid = 1; goto W }
)");
    auto l = classify_actions(f);
    CHECK(l.tags[0]->action == ActionKind::Recv);
    CHECK(l.tags[1]->action == ActionKind::Offer);
    CHECK(l.tags[1]->port == "sel");
    CHECK(session::to_string(l.tags[2]->label()) == "!done(1)");
}

TEST_CASE("candidate extraction") {
    SUBCASE("linear machine") {
        HwFsm f = parse_toy_hdl(R"(
ip lin
in A 8
out B 8
out C 8
state R { if (A.valid) goto S1 }
state S1 { B.valid = 1; goto S2 }
state S2 { C.valid = 1; goto R }
)");
        auto c = extract_candidates(classify_actions(f));
        REQUIRE(c.size() == 1);
        CHECK(c[0].id == "lin/1");
        CHECK(c[0].session == S("?A(8).!B(8).!C(8)"));
        CHECK(c[0].paths == std::vector<std::string>{"R>S1>S2"});
    }
    SUBCASE("input-data branch gives an offer") {
        HwFsm f = parse_toy_hdl(R"(
ip u
in A 8
in E 8
out B 8
out C 8
state R { case (A.data) { A: goto S1  E: goto R } }
state S1 { B.valid = 1; goto S2 }
state S2 { C.valid = 1; goto R }
)");
        auto c = extract_candidates(classify_actions(f));
        REQUIRE(c.size() == 1);
        CHECK(trace_strings(c[0].session) ==
              std::vector<std::string>{"&A(8).!B(8).!C(8)", "&E(8)"});
    }
    SUBCASE("serial beats fold") {
        HwFsm f = parse_toy_hdl(R"(
ip beats
in A 8
out ack 1
state R0 { if (A.valid) goto R1 }
state R1 { if (A.valid) goto T }
state T { ack.valid = 1; goto R0 }
)");
        auto c = extract_candidates(classify_actions(f));
        REQUIRE(c.size() == 1);
        CHECK(session::to_notation(session::fold_widths(c[0].session)) == "?A(16).!ack(1)");
    }
    SUBCASE("two iterations") {
        HwFsm f = parse_fsm(two_state);
        auto c = extract_candidates(classify_actions(f), 2);
        REQUIRE(c.size() == 2);
        std::set<std::size_t> sizes;
        for (const auto& x : c) sizes.insert(x.session.transition_count());
        CHECK(sizes == std::set<std::size_t>{2, 4});
    }
    SUBCASE("cycles that avoid reset are unsupported") {
        HwFsm f = parse_toy_hdl(R"(
ip loop
in A 8
out B 8
state R { goto L1 }
state L1 { if (A.valid) goto L2 }
state L2 { B.valid = 1; goto L1 }
)");
        CHECK_THROWS_WITH_AS(extract_candidates(classify_actions(f)), doctest::Contains("unsupported recursion"),
                             FsmError);
    }
    SUBCASE("ECG analyzer merges the identical decision arms") {
        auto c = extract_candidates(classify_actions(load_fsm(test::data("ecg/analyzer.fsm"))));
        REQUIRE(c.size() == 1);
        CHECK(session::to_notation(session::fold_widths(c[0].session)) ==
              "?signal(128).+classification(88)");
    }
}

TEST_CASE("candidate traces equal brute-force tag paths on random machines") {
    std::mt19937_64 rng(19);
    for (int i = 0; i < 300; ++i) {
        HwFsm f = random_fsm(rng, 2 + rng() % 11);
        REQUIRE_NOTHROW(validate(f));
        std::set<std::string> expected;
        brute_paths(f, f.reset, true, "", expected);
        expected.erase("");
        auto c = extract_candidates(classify_actions(f));
        REQUIRE(c.size() == 1);
        auto got = trace_strings(c[0].session);
        std::set<std::string> got_set(got.begin(), got.end());
        got_set.erase("");
        CHECK(got_set == expected);
    }
}
