#include "hopfcyc/scenario.hpp"
#include "hopfcyc/workbench.hpp"

#include <doctest.h>

#include <filesystem>

using namespace hopfcyc;

namespace {

const std::filesystem::path kScenarios = HOPFCYC_SCENARIO_DIR;

std::vector<std::filesystem::path> bundled()
{
    std::vector<std::filesystem::path> out;
    for (const auto& e : std::filesystem::directory_iterator(kScenarios))
        if (e.path().extension() == ".yaml")
            out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

// Returns the error for a scenario expected to be rejected.
ScenarioError rejection(std::string_view text)
{
    try {
        parse_scenario(text, "t.yaml");
    } catch (const ScenarioError& e) {
        return e;
    }
    FAIL("scenario was accepted");
    return ScenarioError("", 0, "", "");
}

constexpr const char* kSmall = R"(name: small
algebras:
  A:
    basis: [[1, 0], [x, 1]]
    unit: {1: 1}
    products:
      - [1, 1, {1: 1}]
      - [1, x, {x: 1}]
      - [x, 1, {x: 1}]
    trace: {weight: 1, values: {x: 1/2}}
tasks:
  - task: check
    what: dga
    algebra: A
  - task: compute
    invariant: HC
    algebra: A
    degrees: [0, 2]
    weights: [0, 0]
)";

}  // namespace

TEST_CASE("bundled scenarios round-trip through the canonical formatter")
{
    const auto files = bundled();
    REQUIRE(files.size() >= 6);
    for (const auto& p : files) {
        CAPTURE(p.filename().string());
        const Scenario s = load_scenario(p.string());
        const std::string text = format_scenario(s);
        const Scenario back = parse_scenario(text);
        CHECK(back == s);
        CHECK(format_scenario(back) == text);
    }
}

TEST_CASE("explicit declarations round-trip")
{
    const Scenario s = parse_scenario(kSmall);
    REQUIRE(s.algebras.size() == 1);
    CHECK(s.algebras[0].basis.size() == 2);
    CHECK(s.algebras[0].trace->values[0].second == Rational(1, 2));
    CHECK(s.tasks[1].degrees == std::pair{0, 2});
    CHECK(s.tasks[0].line.value == 12);
    CHECK(parse_scenario(format_scenario(s)) == s);
}

TEST_CASE("validation errors carry line and field")
{
    auto e = rejection("name: x\ntasks:\n  - task: compute\n    invariant: HC\n    algebra: A\n    degrees: [0, 1]\n");
    CHECK(e.line == 5);
    CHECK(e.field == "tasks[0].algebra");
    CHECK(std::string(e.what()).find("not a declared") != std::string::npos);

    e = rejection("name: x\nalgebras:\n  A:\n    builtin: q\n    colour: red\n");
    CHECK(e.line == 5);
    CHECK(std::string(e.what()).find("unknown key 'colour'") != std::string::npos);

    e = rejection("algebras:\n  A:\n    basis: [[1, 0]]\n    unit: {1: one}\n");
    CHECK(e.line == 4);
    CHECK(e.field == "algebras.A.unit.1");

    e = rejection("tasks:\n  - task: weil\n");
    CHECK(e.line == 2);
    CHECK(std::string(e.what()).find("'lie'") != std::string::npos);

    e = rejection("tasks:\n  - task: frobnicate\n");
    CHECK(e.field == "tasks[0].task");

    e = rejection("tasks:\n  - task: compute\n    invariant: HC\n    algebra: A\n    degrees: [3, 1]\n");
    CHECK(std::string(e.what()).find("empty range") != std::string::npos);

    e = rejection("algebras:\n  A:\n    builtin: q\nhopf:\n  A:\n    builtin: fun:Z2\n    algebra: A\n");
    CHECK(e.line == 6);

    e = rejection("tasks: [\n");
    CHECK(e.line >= 1);

    // references must point at earlier sections
    e = rejection("algebras:\n  C:\n    cross: {groupoid: G, fiber: F}\n");
    CHECK(e.field == "algebras.C.cross.groupoid");
}

TEST_CASE("empty scenario runs to an empty passing report")
{
    const Scenario s = parse_scenario("name: nothing\ntasks: []\n");
    RunReport r = run_scenario(s);
    CHECK(r.tasks.empty());
    CHECK(r.passed());
    CHECK(report_json(r, ReportSection::kComparable).dump() ==
          R"({"comparable":{"scenario":"nothing","passed":true,"tasks":[]}})");
    CHECK(run_scenario(parse_scenario("")).passed());
}

TEST_CASE("runner: results, expectations and failures per task")
{
    Scenario s = parse_scenario(kSmall);
    RunReport r = run_scenario(s);
    REQUIRE(r.tasks.size() == 2);
    CHECK(r.tasks[0].status == "pass");
    CHECK(r.tasks[1].comparable["result"]["dims"].size() == 3);

    s.tasks[1].expect_dims = std::vector<std::size_t>{9, 9, 9};
    r = run_scenario(s);
    CHECK(r.tasks[0].passed());
    CHECK(r.tasks[1].status == "fail");
    CHECK_FALSE(r.passed());

    // a negative control that holds is a failure
    s.tasks[1].expect_dims.reset();
    s.tasks[0].expect_fail = true;
    r = run_scenario(s);
    CHECK(r.tasks[0].status == "fail");
    CHECK(r.tasks[1].status == "pass");

    // a task that throws does not abort the others
    s.tasks[0].expect_fail = false;
    s.tasks[0].what = "hopf";
    s.tasks[0].hopf = "missing";
    r = run_scenario(s);
    CHECK(r.tasks[0].status == "error");
    CHECK(r.tasks[1].status == "pass");

    RunOptions only;
    only.verbs = {"compute"};
    r = run_scenario(s, only);
    REQUIRE(r.tasks.size() == 1);
    CHECK(r.tasks[0].index == 1);
}

TEST_CASE("comparable sections are deterministic")
{
    for (const auto& p : bundled()) {
        CAPTURE(p.filename().string());
        const Scenario s = load_scenario(p.string());
        RunOptions sequential;
        sequential.concurrent = false;
        const std::string a = report_json(run_scenario(s), ReportSection::kComparable).dump();
        const std::string b = report_json(run_scenario(s, sequential), ReportSection::kComparable).dump();
        CHECK(a == b);
        CHECK(report_text(run_scenario(s), ReportSection::kComparable) ==
              report_text(run_scenario(s, sequential), ReportSection::kComparable));
    }
}

TEST_CASE("certificates verify independently")
{
    const Scenario s = load_scenario((kScenarios / "discrete-gv-z3.yaml").string());
    RunOptions o;
    o.verbs = {"chi", "twist-compare"};
    RunReport r = run_scenario(s, o);
    REQUIRE(r.tasks.size() == 2);
    for (const auto& t : r.tasks) {
        CAPTURE(t.index);
        REQUIRE(t.certificate);
        CHECK(verify_certificate_json(s, *t.certificate).kind == VerifyOutcome::Kind::kPass);

        Json bad = *t.certificate;
        bad["primitive"][0]["value"] = (Rational::parse(bad["primitive"][0]["value"].get<std::string>()) + 1).str();
        auto v = verify_certificate_json(s, bad);
        CHECK(v.kind == VerifyOutcome::Kind::kFail);
        CHECK(v.message.find("differs") != std::string::npos);

        Json other_task = *t.certificate;
        other_task["task"] = 0;
        CHECK(verify_certificate_json(s, other_task).kind == VerifyOutcome::Kind::kReferenceError);

        Json wrong_cocycle = *t.certificate;
        wrong_cocycle["cocycle"][0]["value"] = "100";
        CHECK(verify_certificate_json(s, wrong_cocycle).kind == VerifyOutcome::Kind::kReferenceError);
    }
    const Scenario other = load_scenario((kScenarios / "hc-of-ground-field.yaml").string());
    auto v = verify_certificate_json(other, *r.tasks[0].certificate);
    CHECK(v.kind == VerifyOutcome::Kind::kReferenceError);
    CHECK(v.message.find("not 'hc-of-ground-field'") != std::string::npos);
}

TEST_CASE("bundled negative controls all fail with witnesses")
{
    const Scenario s = load_scenario((kScenarios / "negative-controls.yaml").string());
    RunReport r = run_scenario(s);
    CHECK(r.passed());
    for (const auto& t : r.tasks) {
        CAPTURE(t.label);
        CHECK(t.comparable["expect"] == "fail");
        CHECK_FALSE(t.comparable["witnesses"].empty());
    }
}
