#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "isolab/scenarios.hpp"

#include <filesystem>
#include <fstream>

using namespace isolab;

namespace {

const TheoremCheck& theorem(const Report& r, const std::string& prefix) {
    for (const auto& t : r.theorems)
        if (t.name.rfind(prefix, 0) == 0) return t;
    throw std::runtime_error("no theorem check " + prefix);
}

}  // namespace

TEST_CASE("scenario files mirror the builtin scenarios") {
    const std::filesystem::path dir = ISOLAB_SCENARIO_DIR;
    auto builtin = builtin_scenarios();
    CHECK(builtin.size() == 21);
    for (const auto& s : builtin) {
        const auto path = dir / (s.name + ".json");
        REQUIRE_MESSAGE(std::filesystem::exists(path), path.string());
        Scenario f = find_scenario(path.string());
        CHECK(f.to_json() == s.to_json());
        CHECK(Scenario::from_json(s.to_json()).to_json() == s.to_json());
        for (const auto& e : s.expected) CHECK_FALSE(e.provenance.empty());
    }
    CHECK_THROWS_AS(find_scenario("no-such-scenario"), InvalidInput);
    Json bad = builtin.front().to_json();
    bad["expected"]["provenance"].erase(bad["expected"]["provenance"].begin());
    CHECK_THROWS_AS(Scenario::from_json(bad), InvalidInput);
}

TEST_CASE("so(2N) scenario carries the closed-form expectations") {
    auto s = scenario_so2N(3, 1);
    CHECK(s.algebra == "so(8)");
    CHECK(s.sigma1 == "inner:diag(i,i,i,i,-i,-i,-i,-i)");
    CHECK(s.sigma2 == "inner:diag(i,-i,-i,-i,i,i,i,-i)");
    // six CSS dims plus six coincidence flags for n, m odd and distinct
    CHECK(s.expected.size() == 12);
    CHECK(scenario_so2N(2, 2).expected.size() == 6);
    CHECK_THROWS_AS(scenario_so2N(0, 3), InvalidInput);
    CHECK_THROWS_AS(build(scenario_so2N(5, 4)), InvalidInput);
    CHECK_NOTHROW(build(scenario_so2N(5, 4), 18));
}

TEST_CASE("end-to-end run on so(8) with (n,m) = (3,1)") {
    auto r = run(scenario_so2N(3, 1), Suite::all(), 42);
    CHECK(r.theorems_ok());
    CHECK(r.expectations_ok());
    for (const auto& t : r.theorems) CHECK_MESSAGE(t.status != Status::fail, t.name << ": " << t.detail);
    // g00 = gl(3) x gl(1), the common centralizer of the two gl(4) structures
    CHECK(r.data["dim_matrix"] == Json::parse("[[10,6],[6,6]]"));
    CHECK(r.data["modules"].size() == 12);
    CHECK(theorem(r, "generic stabilizer").status == Status::pass);
    CHECK(theorem(r, "dyad").status == Status::not_applicable);
    CHECK(theorem(r, "affineness").status == Status::cited);
    for (const auto& m : r.data["modules"]) CHECK(m["trdeg_b"] == 2);
}

TEST_CASE("reports are deterministic and render the dimension matrix") {
    auto s = find_scenario("triad-sl2");
    auto a = emit(run(s, Suite::all(), 7), Format::json);
    auto b = emit(run(s, Suite::all(), 7), Format::json);
    CHECK(a == b);
    auto md = emit(run(s, Suite::all(), 7), Format::markdown);
    CHECK(md.find("| dim g_ij | σ2 = +1 | σ2 = −1 |") != std::string::npos);
    CHECK(md.find("| σ1 = −1 | 1 | 1 |") != std::string::npos);
    CHECK(md.find("g_ij has σ1 = (−1)^i and σ2 = (−1)^j") != std::string::npos);
    auto r = run(s, Suite::all(), 7);
    CHECK(theorem(r, "triad").status == Status::pass);
    CHECK(theorem(r, "dyad").status == Status::pass);
}

TEST_CASE("a wrong expectation is reported, not hidden") {
    auto s = find_scenario("dyad-sl2");
    s.expected.push_back({"/dim_matrix/1/1", 5, "deliberately wrong"});
    s.expected.push_back({"/no/such/field", 1, "missing"});
    auto r = run(s, Suite::parse("css"), 1);
    CHECK_FALSE(r.expectations_ok());
    REQUIRE(r.mismatches.size() == 2);
    CHECK(r.mismatches[0]["actual"] == 1);
    CHECK(r.mismatches[1]["actual"].is_null());
    CHECK(r.to_json()["status"] == "mismatch");
    CHECK_FALSE(r.data.contains("modules"));
    CHECK_THROWS_AS(Suite::parse("css,bogus"), InvalidInput);
}

TEST_CASE("gh(6,2) records the failed Cartan condition on z_g(c10) ∩ g1*") {
    auto r = run(scenario_gh(6, 2), Suite::parse("css,invariants"), 42);
    CHECK(r.expectations_ok());
    const Json& v = r.data["vanishing"];
    CHECK(v["condition_ok"] == false);
    CHECK(v["dim_c10"] == 1);
    CHECK(v["dim_c1*"] == 3);
    CHECK(v["k"] == 2);
    CHECK(v["vanishing"] == 2);
    CHECK(theorem(r, "vanishing of k basic invariants").status == Status::not_applicable);
    CHECK(r.data["invariants"]["degrees"] == Json::parse("[2,4,6]"));
}

TEST_CASE("canonical sl(3): dimension formulas and odd-degree vanishing") {
    auto r = run(scenario_canonical("sl(3)", "inner:diag(1,1,-1)"), Suite::parse("css,invariants"), 42);
    CHECK(r.data["dim_matrix"] == Json::parse("[[1,2],[2,3]]"));
    CHECK(r.expectations_ok());
    CHECK(theorem(r, "canonical decomposition dimensions").status == Status::pass);
    CHECK(theorem(r, "little involutions").status == Status::pass);
    CHECK(theorem(r, "vanishing invariants are the odd-degree").status == Status::pass);
    CHECK(theorem(r, "odd-degree gradients").status == Status::pass);
    CHECK(theorem(r, "quasi-maximal").status == Status::pass);
}
