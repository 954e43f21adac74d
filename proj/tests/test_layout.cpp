#include "support.hpp"

#include "vip/layout/floorplan.hpp"
#include "vip/layout/svg.hpp"

#include <doctest.h>

using namespace vip;
using namespace vip::layout;

namespace {

TemplateVariant square(const std::string& ip, const std::string& id, double side, double freq = 100) {
    return TemplateVariant{ip, id, freq, side, side, 1.0, 1, 'N'};
}

bool overlap(const Placement& a, const Placement& b) {
    return a.x < b.x + b.width && b.x < a.x + a.width && a.y < b.y + b.height && b.y < a.y + a.height;
}

struct RandomCase {
    TemplateLibrary lib;
    Selections sel;
    std::vector<TemplateVariant> variants;
};

RandomCase random_case(std::mt19937_64& rng) {
    RandomCase rc;
    std::size_t ips = 1 + rng() % 4;
    for (std::size_t i = 0; i < ips; ++i) {
        std::string ip = "ip" + std::to_string(i);
        std::size_t nv = 1 + rng() % 3;
        for (std::size_t v = 0; v < nv; ++v) {
            TemplateVariant t{ip, "v" + std::to_string(v), double(100 + rng() % 400),
                              double(5 + rng() % 120), double(5 + rng() % 120), 0.5, 1, 'N'};
            rc.variants.push_back(t);
            rc.lib.add(t);
        }
    }
    std::size_t blocks = 1 + rng() % 8;
    for (std::size_t b = 0; b < blocks; ++b) {
        const auto& t = rc.variants[rng() % rc.variants.size()];
        rc.sel["b" + std::to_string(b)] = {t.ip, t.id};
    }
    return rc;
}

}  // namespace

TEST_CASE("template library") {
    TemplateLibrary lib = load_templates_file(test::data("templates/avg_filter.json"));
    CHECK(lib.size() == 6);
    auto q = lib.query("avg_filter");
    REQUIRE(q.size() == 6);
    for (std::size_t i = 1; i < q.size(); ++i) {
        CHECK((q[i - 1].freq_mhz > q[i].freq_mhz ||
               (q[i - 1].freq_mhz == q[i].freq_mhz && q[i - 1].area() <= q[i].area())));
    }
    CHECK(load_templates_file(test::data("ecg/templates.json")).ips() ==
          std::vector<std::string>{"ecg_analyzer", "sim_host"});
    CHECK(load_templates(nlohmann::json::array()).empty());
    CHECK(load_templates(nlohmann::json::array()).query("x").empty());
    CHECK(load_templates(to_json(lib)).query("avg_filter") == q);

    SUBCASE("invalid variants") {
        TemplateLibrary l;
        l.add(square("a", "v", 10));
        CHECK_THROWS_AS(l.add(square("a", "v", 20)), TemplateError);
        CHECK_THROWS_AS(l.add(square("a", "w", 0)), TemplateError);
        TemplateVariant bad = square("a", "z", 10);
        bad.cycles_per_op = 0;
        CHECK_THROWS_AS(l.add(bad), TemplateError);
        bad = square("a", "z", 10);
        bad.pin_edge = 'Q';
        CHECK_THROWS_AS(l.add(bad), TemplateError);
        CHECK_THROWS_AS(load_templates(nlohmann::json::parse(
                            R"({"ip":"a","variants":[{"id":"x","freq_mhz":1,"width_um":0,"height_um":1,"leakage_mw":0,"cycles_per_op":1,"pin_edge":"N"}]})")),
                        TemplateError);
    }
}

TEST_CASE("two small blocks share one shelf") {
    TemplateLibrary lib;
    lib.add(square("a", "v", 10));
    lib.add(square("b", "v", 10));
    Floorplan f = compose(lib, {{"a", {"a", "v"}}, {"b", {"b", "v"}}}, 30, 12, 2);
    REQUIRE(f.placements.size() == 2);
    CHECK(f.placements[0].x == 0);
    CHECK(f.placements[0].y == 0);
    CHECK(f.placements[1].x == 12);
    CHECK(f.placements[1].y == 0);
    CHECK(f.fit);
    CHECK(f.utilization == doctest::Approx(200.0 / 360.0));
}

TEST_CASE("oversize block is still placed") {
    TemplateLibrary lib;
    lib.add(square("a", "big", 50));
    Floorplan f = compose(lib, {{"a", {"a", "big"}}}, 30, 30, 2);
    REQUIRE(f.placements.size() == 1);
    CHECK_FALSE(f.fit);
    CHECK_FALSE(f.placements[0].inside);
    CHECK(f.utilization <= 1.0);
    CHECK_THROWS_AS(compose(lib, {{"a", {"a", "nope"}}}, 30, 30, 2), TemplateError);
}

TEST_CASE("packing properties on random selection sets") {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 300; ++i) {
        RandomCase rc = random_case(rng);
        double w = 50 + rng() % 400, h = 50 + rng() % 400, sp = rng() % 6;
        Floorplan f = compose(rc.lib, rc.sel, w, h, sp);
        CHECK(f.placements.size() == rc.sel.size());
        for (std::size_t a = 0; a < f.placements.size(); ++a)
            for (std::size_t b = a + 1; b < f.placements.size(); ++b)
                CHECK_FALSE(overlap(f.placements[a], f.placements[b]));
        CHECK(f.utilization >= 0.0);
        CHECK(f.utilization <= 1.0);
        if (f.fit) {
            for (const auto& p : f.placements) {
                CHECK(p.x + p.width + sp <= w);
                CHECK(p.y + p.height + sp <= h);
            }
        }
        // Library insertion order does not matter.
        TemplateLibrary shuffled;
        auto vs = rc.variants;
        std::shuffle(vs.begin(), vs.end(), rng);
        for (const auto& v : vs) shuffled.add(v);
        CHECK(compose(shuffled, rc.sel, w, h, sp) == f);
    }
}

TEST_CASE("opt_select") {
    TemplateLibrary lib = load_templates_file(test::data("ecg/templates.json"));
    Selections sel{{"analyzer", {"ecg_analyzer", "lp_square"}}, {"host", {"sim_host", "base"}}};
    PlanState s0 = make_plan(lib, sel, 320, 150, 5);
    CHECK(s0.plan.fit);

    SUBCASE("identity swap") {
        OptResult r = opt_select(lib, s0, "analyzer", "lp_square");
        CHECK(r.state.plan == s0.plan);
        CHECK(r.deltas.area == 0);
        CHECK(r.deltas.leakage == 0);
        CHECK(r.deltas.min_frequency == 0);
    }
    SUBCASE("larger variant and reverse swap") {
        OptResult up = opt_select(lib, s0, "analyzer", "hp_square");
        CHECK(up.deltas.area > 0);
        CHECK(up.deltas.fit_before);
        CHECK_FALSE(up.deltas.fit_after);
        CHECK(up.deltas.min_frequency == doctest::Approx(100.0));
        REQUIRE(up.state.history.size() == 1);
        CHECK(up.state.history[0] == HistoryEntry{"analyzer", "lp_square", "hp_square"});
        OptResult back = opt_select(lib, up.state, "analyzer", "lp_square");
        CHECK(back.state.plan == s0.plan);
        CHECK(render_svg(back.state.plan) == render_svg(s0.plan));
        CHECK(back.state.history.size() == 2);
    }
    SUBCASE("equal-area aspect change") {
        OptResult sq = opt_select(lib, s0, "host", "tall");
        CHECK(sq.deltas.area == 0);
        CHECK_FALSE(sq.state.plan == s0.plan);
    }
    SUBCASE("target by ip name") {
        OptResult r = opt_select(lib, s0, "sim_host", "tall");
        CHECK(r.state.selections.at("host").variant == "tall");
    }
    SUBCASE("unknown target or variant") {
        CHECK_THROWS_AS(opt_select(lib, s0, "nobody", "tall"), TemplateError);
        CHECK_THROWS_AS(opt_select(lib, s0, "host", "nope"), TemplateError);
    }
    SUBCASE("metrics") {
        PlanMetrics m = metrics(lib, sel);
        CHECK(m.area == doctest::Approx(100 * 100 + 80 * 60));
        CHECK(m.min_frequency == doctest::Approx(200));
        CHECK(metrics(lib, {}).min_frequency == 0);
    }
}

TEST_CASE("svg rendering") {
    TemplateLibrary lib;
    lib.add(square("a", "v", 10));
    lib.add(square("b", "v", 10));
    lib.add(square("c", "huge", 40));
    Floorplan ok = compose(lib, {{"a", {"a", "v"}}, {"b", {"b", "v"}}}, 30, 12, 2);
    std::string svg = render_svg(ok);
    CHECK(svg == render_svg(ok));
    auto count = [](const std::string& s, const std::string& needle) {
        std::size_t n = 0;
        for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
        return n;
    };
    CHECK(count(svg, "<rect class=\"block\"") == 2);
    CHECK(count(svg, "class=\"box\"") == 1);
    CHECK(count(svg, "stroke-dasharray") == 1);
    CHECK(svg.find(">a a/v</text>") != std::string::npos);

    Floorplan bad = compose(lib, {{"a", {"a", "v"}}, {"c", {"c", "huge"}}}, 30, 12, 2);
    CHECK_FALSE(bad.fit);
    CHECK(count(render_svg(bad), "block out-of-box") >= 1);
}
