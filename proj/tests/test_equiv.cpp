#include "support.hpp"

#include "vip/equiv/binding.hpp"
#include "vip/equiv/oracle.hpp"
#include "vip/equiv/scenarios.hpp"
#include "vip/equiv/subtype.hpp"
#include "vip/equiv/suite.hpp"
#include "vip/equiv/verdict.hpp"
#include "vip/frontend/sessions.hpp"
#include "vip/hw/fsm_json.hpp"
#include "vip/service/project.hpp"
#include "vip/session/ops.hpp"

#include <doctest.h>
#include <fmt/format.h>

using namespace vip;
using namespace vip::equiv;
using session::Label;
using session::SessionLts;
using vip::test::S;

namespace {

const SessionLts T1 = S("?A(8).!B(8).!C(8)");
const SessionLts U1 = S("{?A(8).!B(8).!C(8), ?E(8)}");

std::string text(const std::vector<Label>& w) { return session::to_string(w); }

/// Merges adjacent labels with equal action and message, summing widths.
std::vector<std::string> linear_fold(const std::vector<Label>& labels) {
    std::vector<std::tuple<session::ActionKind, std::string, std::uint32_t>> runs;
    for (const auto& l : labels) {
        if (!runs.empty() && std::get<0>(runs.back()) == l.action && std::get<1>(runs.back()) == l.message) {
            std::get<2>(runs.back()) += l.width();
        } else {
            runs.emplace_back(l.action, l.message, l.width());
        }
    }
    std::vector<std::string> out;
    for (const auto& [a, m, w] : runs) {
        out.push_back(fmt::format("{}{}({})", a == session::ActionKind::Send ? "!" : "?", m, w));
    }
    return out;
}

std::vector<std::string> linear_labels(const SessionLts& s) {
    auto traces = session::enumerate_traces(s);
    REQUIRE(traces.size() == 1);
    std::vector<std::string> out;
    for (const auto& l : traces[0]) out.push_back(session::to_string(l));
    return out;
}

std::vector<hw::CandidateProtocol> analyzer_candidates(const std::string& file) {
    return hw::extract_candidates(hw::classify_actions(hw::load_fsm(test::data("ecg/" + file))));
}

SessionLts ecg_callee_view() {
    auto g = frontend::parse_program(service::read_file(test::data("ecg/ecg.oo")));
    return frontend::derive_sessions(g, {}, frontend::Perspective::Callee).at(0).session;
}

}  // namespace

TEST_CASE("U1 is a subtype of T1 but not the other way") {
    CHECK(subtype(U1, T1).holds);
    CHECK(subtype(U1, T1).witness.empty());
    SubtypeResult r = subtype(T1, U1);
    CHECK_FALSE(r.holds);
    CHECK(text(r.witness) == "?E(8)");
    EquivalenceVerdict v = equivalent(T1, U1);
    CHECK(v.outcome == Outcome::SubtypeOnly);
    CHECK(v.direction == hardware_sub_software);
    CHECK_FALSE(v.witness.empty());
    CHECK_FALSE(oracle_equivalent(T1, U1));
    CHECK(oracle_subtype(U1, T1));
    CHECK_FALSE(oracle_subtype(T1, U1));
}

TEST_CASE("offer and receive labels match within a polarity") {
    CHECK(subtype(S("&A(8)"), S("?A(8)")).holds);
    CHECK(subtype(S("+A(8)"), S("!A(8)")).holds);
    CHECK_FALSE(subtype(S("!A(8)"), S("?A(8)")).holds);
}

TEST_CASE("serialized beats are equivalent to one wide transfer") {
    EquivalenceVerdict v = equivalent(S("?A(16).!ack(1)"), S("?A(8).?A(8).!ack(1)"));
    CHECK(v.outcome == Outcome::Equivalent);
    CHECK(v.folds == 1);
    CHECK(v.witness.empty());
}

TEST_CASE("ordering defect is caught with the least witness") {
    EquivalenceVerdict v = equivalent(S("!X(8).!Y(8)"), S("!Y(8).!X(8)"));
    CHECK(v.outcome == Outcome::NotEquivalent);
    CHECK(text(v.witness) == "!X(8)");
    CHECK_FALSE(oracle_equivalent(S("!X(8).!Y(8)"), S("!Y(8).!X(8)")));
}

TEST_CASE("oracle size bound and identical sessions") {
    CHECK(oracle_equivalent(T1, T1));
    std::vector<Label> many(15, session::send("A", 8));
    for (std::size_t i = 0; i < many.size(); ++i) many[i].message = "m" + std::to_string(i % 2);
    CHECK_THROWS_AS(oracle_subtype(session::linear(many), T1), std::invalid_argument);
}

TEST_CASE("witness order puts prefixes first") {
    std::vector<Label> a{session::recv("A", 8)};
    std::vector<Label> ab{session::recv("A", 8), session::send("B", 8)};
    CHECK(witness_less(a, ab));
    CHECK_FALSE(witness_less(ab, a));
    CHECK_FALSE(witness_less(a, a));
}

TEST_CASE("subtype agrees with the oracle, is reflexive and transitive") {
    std::mt19937_64 rng(23);
    std::vector<SessionLts> pool;
    while (pool.size() < 60) {
        SessionLts s = test::random_tree(rng, 3, 2);
        if (s.transition_count() <= oracle_transition_limit) pool.push_back(std::move(s));
    }
    const std::size_t n = pool.size();
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n));
    std::size_t holds = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            SubtypeResult r = subtype(pool[i], pool[j]);
            rel[i][j] = r.holds;
            holds += r.holds;
            CHECK(r.holds == oracle_subtype(pool[i], pool[j]));
            CHECK(r.holds == r.witness.empty());
        }
        CHECK(rel[i][i]);
    }
    CHECK(holds > n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (rel[a][b] && rel[b][c]) CHECK(rel[a][c]);
}

TEST_CASE("equivalent is symmetric and the subtype direction flips") {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 300; ++i) {
        SessionLts a = test::random_tree(rng, 3);
        SessionLts b = test::random_tree(rng, 3);
        if (i % 3 == 0) b = a;
        EquivalenceVerdict ab = equivalent(a, b), ba = equivalent(b, a);
        CHECK(ab.outcome == ba.outcome);
        if (ab.outcome == Outcome::SubtypeOnly) CHECK(ab.direction != ba.direction);
        CHECK(ab.equivalent() == ab.witness.empty());
    }
}

TEST_CASE("beat-split of any label is undone by folding") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 400; ++i) {
        std::vector<Label> labels = test::random_labels(rng, 2 + rng() % 10, 3);
        SessionLts l = session::linear(labels);
        std::size_t at = rng() % labels.size();
        std::uint32_t w = labels[at].width();
        std::uint32_t beats = std::uint32_t{1} << (rng() % 4);
        if (w % beats != 0) beats = 1;
        SessionLts split = beat_split(l, at, beats);
        CHECK(split.transition_count() == labels.size() + beats - 1);
        CHECK(linear_labels(session::fold_widths(split)) == linear_fold(labels));
        CHECK(equivalent(l, split).outcome == Outcome::Equivalent);
    }
}

TEST_CASE("check_binding") {
    SessionLts sw = ecg_callee_view();
    SUBCASE("control signals are data unless filtered") {
        auto c = analyzer_candidates("analyzer_control.fsm");
        EquivalenceVerdict plain = check_binding(sw, c);
        CHECK(plain.outcome == Outcome::NotEquivalent);
        CHECK(plain.filtered.empty());
        EquivalenceVerdict filtered = check_binding(sw, c, {"start", "done"});
        CHECK(filtered.outcome == Outcome::Equivalent);
        CHECK(filtered.candidate == "ecg_analyzer/1");
        CHECK(filtered.filtered == std::set<std::string>{"start", "done"});
    }
    SUBCASE("plain analyzer matches") {
        EquivalenceVerdict v = check_binding(sw, analyzer_candidates("analyzer.fsm"));
        CHECK(v.equivalent());
        CHECK(v.folds >= 1);
    }
    SUBCASE("mismatched message identity") {
        CHECK(check_binding(S("?Z(8)"), analyzer_candidates("analyzer.fsm")).outcome == Outcome::NotEquivalent);
        CHECK(check_binding(sw, analyzer_candidates("analyzer_mutated.fsm")).outcome == Outcome::NotEquivalent);
    }
    SUBCASE("empty candidate set") {
        CHECK_THROWS_AS(check_binding(sw, {}), ConfigError);
    }
    SUBCASE("serial and parallel pick the same verdict") {
        hw::CandidateProtocol a{"x/1", "x", S("?A(8).!B(8)"), {}};
        hw::CandidateProtocol b{"x/2", "x", S("?A(8).!C(8)"), {}};
        hw::CandidateProtocol d{"x/3", "x", S("?A(8).!C(8).!C(8)"), {}};
        for (const auto& s : {S("?A(8).!C(8)"), S("?A(8).!D(8)"), S("?A(8).!C(16)")}) {
            auto p = check_binding(s, {a, b, d}, {}, Execution::Parallel);
            auto q = check_binding(s, {a, b, d}, {}, Execution::Serial);
            CHECK(p.outcome == q.outcome);
            CHECK(p.candidate == q.candidate);
            CHECK(text(p.witness) == text(q.witness));
        }
    }
}

TEST_CASE("scenario generation") {
    SUBCASE("bit-width mutation changes exactly one width") {
        Scenario sc = generate_scenario(1, 5, Mutation::BitWidth, false);
        CHECK(sc.expected == Expected::NonEq);
        REQUIRE(sc.defect);
        auto l = session::enumerate_traces(sc.left).at(0);
        auto r = session::enumerate_traces(sc.right).at(0);
        REQUIRE(l.size() == 5);
        REQUIRE(r.size() == 5);
        std::size_t diffs = 0;
        for (std::size_t i = 0; i < 5; ++i) {
            CHECK(l[i].message == r[i].message);
            CHECK(l[i].action == r[i].action);
            if (l[i].width() != r[i].width()) {
                ++diffs;
                CHECK(i == *sc.defect);
            }
        }
        CHECK(diffs == 1);
    }
    SUBCASE("no mutation is expected equivalent for any seed") {
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            Scenario sc = generate_scenario(seed, 3 + seed % 18, Mutation::None);
            CHECK(sc.expected == Expected::Eq);
            CHECK(equivalent(sc.left, sc.right).equivalent());
        }
    }
    SUBCASE("control-signal mutation wraps the hardware side") {
        Scenario sc = generate_scenario(4, 6, Mutation::ControlSignal, false);
        CHECK(sc.expected == Expected::EqWithFilter);
        auto r = session::enumerate_traces(sc.right).at(0);
        CHECK(session::to_string(r.front()) == "?start(1)");
        CHECK(session::to_string(r.back()) == "!done(1)");
        CHECK_FALSE(equivalent(sc.left, sc.right).equivalent());
        CHECK(equivalent(sc.left, session::prune_communication(sc.right, {"start", "done"})).equivalent());
    }
    SUBCASE("deterministic and bounded") {
        for (Mutation m : all_mutations) {
            Scenario a = generate_scenario(9, 12, m), b = generate_scenario(9, 12, m);
            CHECK(a.left == b.left);
            CHECK(a.right == b.right);
        }
        CHECK_THROWS_AS(generate_scenario(1, 2, Mutation::None), std::invalid_argument);
        CHECK_THROWS_AS(generate_scenario(1, 21, Mutation::None), std::invalid_argument);
    }
}

TEST_CASE("checker agrees with the oracle on 500 short scenarios") {
    std::mt19937_64 rng(37);
    std::size_t compared = 0;
    for (int i = 0; i < 500; ++i) {
        Mutation m = all_mutations[rng() % std::size(all_mutations)];
        Scenario sc = generate_scenario(rng(), 3 + rng() % 10, m, rng() % 2);
        if (sc.left.transition_count() > oracle_transition_limit ||
            sc.right.transition_count() > oracle_transition_limit) {
            continue;
        }
        ++compared;
        CHECK_MESSAGE(equivalent(sc.left, sc.right).equivalent() == oracle_equivalent(sc.left, sc.right),
                      session::to_notation(sc.left), " vs ", session::to_notation(sc.right));
    }
    CHECK(compared > 400);
}

TEST_CASE("suite runs identically serial and parallel") {
    SuiteConfig cfg;
    cfg.seed = 5;
    cfg.count = 600;
    SuiteReport p = run_suite(cfg, Execution::Parallel);
    SuiteReport s = run_suite(cfg, Execution::Serial);
    REQUIRE(p.results.size() == s.results.size());
    for (std::size_t i = 0; i < p.results.size(); ++i) {
        CHECK(p.results[i].index == i);
        CHECK(p.results[i].verdict.outcome == s.results[i].verdict.outcome);
        CHECK(p.results[i].classification == s.results[i].classification);
    }
    CHECK(p.counts == s.counts);
    CHECK(p.counts[static_cast<std::size_t>(Classification::FalsePositive)] == 0);
    CHECK(p.oracle_disagreements == 0);
    nlohmann::json summary = summary_json(p);
    CHECK(summary.contains("cells"));
}
