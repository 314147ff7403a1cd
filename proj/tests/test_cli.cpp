#include "minklab/core.hpp"
#include "minklab/lattice.hpp"
#include "minklab/suites.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

using namespace minklab;

TEST_CASE("config parsing")
{
    const auto c = SuiteConfig::parse("# tolerances\nrigid.tol = 1e-6\n\n  grid=21x31  # narrow\nfd.step=0.002\n");
    CHECK(c.has("rigid.tol"));
    CHECK(c.number("rigid.tol", 1.0) == 1e-6);
    CHECK(c.number("missing", 0.5) == 0.5);
    CHECK(c.extent("grid", {41, 41}) == std::pair<int, int>{21, 31});
    CHECK(c.integer("samples", 7) == 7);

    const auto echo = c.echo();
    CHECK(std::stod(echo.at("rigid.tol")) == 1e-6);
    CHECK(echo.at("missing") == "0.5");
    CHECK(echo.at("samples") == "7");

    CHECK(parse_extent("41x41") == std::pair<int, int>{41, 41});
    CHECK_THROWS_AS(parse_extent("41"), PreconditionError);
    CHECK_THROWS_AS(parse_extent("0x5"), PreconditionError);
    CHECK_THROWS_AS(SuiteConfig::parse("no equals sign"), PreconditionError);
    CHECK_THROWS_AS(SuiteConfig::parse("x = abc").number("x", 1.0), PreconditionError);
    CHECK_THROWS_AS(SuiteConfig::load("/nonexistent/minklab.cfg"), std::exception);
}

TEST_CASE("config file round trip")
{
    const std::string path = "test_cli_config.cfg";
    {
        std::ofstream out(path);
        out << "kinematics.samples = 10\n";
    }
    const auto c = SuiteConfig::load(path);
    std::remove(path.c_str());
    CHECK(c.integer("kinematics.samples", 1000) == 10);
}

TEST_CASE("suite registry")
{
    const auto& n = suite_names();
    CHECK(n.front() == "core");
    CHECK(n.back() == "all");
    CHECK(n.size() == 8);
    CHECK(known_suite("rigid"));
    CHECK_FALSE(known_suite("bogus"));
    CHECK_THROWS_AS(run_suite("bogus", 1, SuiteConfig{}), PreconditionError);
}

TEST_CASE("report schema")
{
    SuiteConfig cfg;
    cfg.set("kinematics.samples", "50");
    const auto rep = run_suite("kinematics", 3, cfg);
    CHECK(rep.passed());
    const auto j = nlohmann::json::parse(rep.to_json());
    CHECK(j.at("schema_version") == 1);
    CHECK(j.at("suite") == "kinematics");
    CHECK(j.at("seed") == 3);
    CHECK(j.at("config").at("kinematics.samples") == "50");
    CHECK(j.at("passed") == true);
    REQUIRE(j.at("checks").is_array());
    REQUIRE_FALSE(j.at("checks").empty());
    for (const auto& c : j.at("checks")) {
        CHECK(c.at("name").get<std::string>().rfind("kinematics.", 0) == 0);
        CHECK(c.at("passed").is_boolean());
        CHECK(c.contains("residual"));
        CHECK(c.contains("tolerance"));
        CHECK(c.contains("note"));
    }

    const std::string csv = rep.to_csv();
    CHECK(csv.rfind("suite,seed,name,passed,residual,tolerance,note\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(rep.checks.size()) + 1);
}

TEST_CASE("non-finite residuals stay valid JSON")
{
    SuiteReport rep;
    rep.suite = "core";
    rep.checks.push_back({"core.x", false, std::nan(""), 1e-9, "threw"});
    const auto j = nlohmann::json::parse(rep.to_json());
    CHECK(j.at("checks")[0].at("residual").is_string());
    CHECK(j.at("passed") == false);
}

TEST_CASE("reports are deterministic")
{
    SuiteConfig cfg;
    cfg.set("lattice.regions", "50");
    cfg.set("grid", "41x41");
    set_lattice_threads(1);
    const auto a = run_suite("lattice", 9, cfg).to_json();
    set_lattice_threads(3);
    const auto b = run_suite("lattice", 9, cfg).to_json();
    set_lattice_threads(0);
    CHECK(a == b);

    SuiteConfig small;
    small.set("core.samples", "100");
    CHECK(run_suite("core", 4, small).to_json() == run_suite("core", 4, small).to_json());
}
