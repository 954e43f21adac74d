#include "support.hpp"

#include <doctest.h>
#include <fmt/format.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace vip;

namespace {

int run(const std::string& args) {
    std::string cmd = std::string(VIPFLOW_PATH) + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string d(const std::string& rel) { return test::data(rel).string(); }

std::filesystem::path tmp(const std::string& name) {
    return std::filesystem::temp_directory_path() / fmt::format("vipflow-{}-{}", ::getpid(), name);
}

nlohmann::json read_json(const std::filesystem::path& p) {
    std::ifstream in(p);
    return nlohmann::json::parse(in);
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
    CHECK(run("") == 2);
    CHECK(run("frobnicate") == 2);
    CHECK(run("check") == 2);
    CHECK(run("pipeline --project " + d("ecg/does-not-exist.json")) == 2);
}

TEST_CASE("check") {
    auto report = tmp("check.json");
    CHECK(run("check --program " + d("ecg/ecg.oo") + " --object analyzer --ip " + d("ecg/analyzer.fsm") +
              " --report " + report.string()) == 0);
    nlohmann::json r = read_json(report);
    CHECK(r.at("verdict") == "equivalent");
    CHECK(r.contains("timing_ms"));
    CHECK(r.at("witness").empty());

    CHECK(run("check --program " + d("ecg/ecg.oo") + " --object analyzer --ip " + d("ecg/analyzer_control.fsm")) == 1);
    CHECK(run("check --program " + d("ecg/ecg.oo") + " --object analyzer --ip " + d("ecg/analyzer_control.fsm") +
              " --filter-controls start,done") == 0);
    CHECK(run("check --software '?A(16).!ack(1)' --ip " + d("ecg/analyzer.fsm")) == 1);
    CHECK(run("check --program " + d("ecg/ecg_invalid.oo") + " --object analyzer --ip " +
              d("ecg/analyzer.fsm")) == 1);
    std::filesystem::remove(report);
}

TEST_CASE("simulate") {
    auto out = tmp("sweep.csv");
    CHECK(run("simulate --topology bus,crossbar --workload all-to-one:bits=64 --width 64 --sweep nodes=2,4,8,16 --out " +
              out.string()) == 0);
    std::ifstream in(out);
    std::string header;
    std::getline(in, header);
    CHECK(header == "N,topology,cycles,latency_us,area,leakage");
    std::size_t rows = 0;
    for (std::string line; std::getline(in, line);) rows += !line.empty();
    CHECK(rows == 8);
    std::filesystem::remove(out);
    CHECK(run("simulate --cnn-reference") == 0);
    CHECK(run("simulate --topology ring") == 2);
}

TEST_CASE("layout") {
    auto svg = tmp("plan.svg");
    CHECK(run("layout --templates " + d("ecg/templates.json") +
              " --select analyzer=ecg_analyzer:lp_square,host=sim_host:base --box 320x150 --spacing 5 --svg " +
              svg.string()) == 0);
    CHECK(std::filesystem::file_size(svg) > 0);
    CHECK(run("layout --templates " + d("ecg/templates.json") +
              " --select analyzer=ecg_analyzer:hp_square,host=sim_host:base --box 320x150 --spacing 5") == 1);
    CHECK(run("layout --templates " + d("ecg/templates.json") + " --select analyzer=ecg_analyzer:nope") == 2);
    std::filesystem::remove(svg);
}

TEST_CASE("scenarios") {
    auto dir = tmp("scen");
    CHECK(run("scenarios --seed 3 --count 120 --lengths 3..6 --out " + dir.string()) == 0);
    nlohmann::json s = read_json(dir / "summary.json");
    CHECK(s.contains("cells"));
    std::ifstream lines(dir / "scenarios.jsonl");
    std::size_t n = 0;
    for (std::string line; std::getline(lines, line);) n += !line.empty();
    CHECK(n == 120);
    std::filesystem::remove_all(dir);
}

TEST_CASE("pipeline") {
    auto report = tmp("pipeline.json");
    CHECK(run("pipeline --project " + d("ecg/project.json") + " --report " + report.string()) == 0);
    CHECK(read_json(report).at("status") == "ok");
    CHECK(run("pipeline --project " + d("ecg/project_mutated.json") + " --report " + report.string()) == 1);
    nlohmann::json r = read_json(report);
    CHECK(r.at("status") == "protocol-violation");
    CHECK(r.at("floorplan").is_null());
    std::filesystem::remove(report);
}
