#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "doctest.h"
#include "orientwave/scenarios.hpp"

using namespace orientwave;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string strip_wall_time(std::string s) {
    return std::regex_replace(s, std::regex("\"wall_time_s\":[^\\n]*\\n"), "");
}

} // namespace

TEST_CASE("config parsing") {
    SUBCASE("minimal config gets defaults") {
        auto cfg = parse_config("{\"schema_version\":1,\"scenario\":\"dispersion\"}");
        CHECK(cfg.scenario == Scenario::Dispersion);
        CHECK(cfg.samples == 1000);
        CHECK(cfg.elastic.alpha == doctest::Approx(1.0));
        CHECK(cfg.elastic.beta == doctest::Approx(2.0));
        CHECK(cfg.elastic.gamma == doctest::Approx(3.0));
    }
    SUBCASE("unknown keys rejected with the key named") {
        try {
            parse_config("{\"schema_version\":1,\"scenario\":\"dispersion\",\"bogus\":1}");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("bogus") != std::string::npos);
        }
    }
    SUBCASE("phi0 at a multiple of pi/2 is rejected for solve1d") {
        try {
            parse_config(
                "{\"schema_version\":1,\"scenario\":\"solve1d\",\"phi0\":1.5707963267948966}");
            FAIL("expected ValidationError");
        } catch (const ValidationError& e) {
            CHECK(std::string(e.what()).find("pi/2") != std::string::npos);
        }
    }
    SUBCASE("schema version required") {
        CHECK_THROWS_AS(parse_config("{\"scenario\":\"dispersion\"}"), ParseError);
        CHECK_THROWS_AS(parse_config("{\"schema_version\":2,\"scenario\":\"dispersion\"}"),
                        ParseError);
        CHECK_THROWS_AS(parse_config("not json"), ParseError);
    }
    SUBCASE("profile families validated") {
        auto cfg = parse_config(
            "{\"schema_version\":1,\"scenario\":\"solve1d\",\"profiles\":{\"f\":{\"family\":"
            "\"gaussian-bump\",\"amplitude\":0.5,\"width\":2.0}}}");
        CHECK(cfg.profiles.at("f").value(0.0) == doctest::Approx(0.5));
        CHECK_THROWS_AS(
            parse_config("{\"schema_version\":1,\"scenario\":\"solve1d\",\"profiles\":{\"f\":{"
                         "\"family\":\"gaussian-bump\",\"sigma\":1.0}}}"),
            ParseError);
        CHECK_THROWS_AS(
            parse_config("{\"schema_version\":1,\"scenario\":\"solve1d\",\"profiles\":{\"f\":{"
                         "\"family\":\"boxcar\"}}}"),
            ParseError);
    }
    SUBCASE("fast-twist ordering enforced") {
        CHECK_THROWS_AS(
            parse_config("{\"schema_version\":1,\"scenario\":\"match-fast-twist\",\"elastic\":"
                         "{\"alpha\":2.0,\"beta\":1.0,\"gamma\":3.0}}"),
            ValidationError);
    }
}

TEST_CASE("series writing") {
    const std::string dir = "scenario_test_out";
    std::filesystem::create_directories(dir);
    SUBCASE("empty table gives a header-only CSV") {
        SeriesTable t;
        t.columns = {"a", "b"};
        write_series(dir + "/empty.csv", t);
        CHECK(slurp(dir + "/empty.csv") == "a,b\n");
    }
    SUBCASE("17 significant digits, LF endings") {
        SeriesTable t;
        t.columns = {"x"};
        t.rows = {{1.0 / 3.0}};
        write_series(dir + "/val.csv", t);
        const std::string got = slurp(dir + "/val.csv");
        CHECK(got == "x\n0.33333333333333331\n");
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("reports are deterministic modulo wall time") {
    auto cfg = parse_config(
        "{\"schema_version\":1,\"scenario\":\"dispersion\",\"samples\":40}");
    auto a = run_scenario(cfg);
    auto b = run_scenario(cfg);
    CHECK(strip_wall_time(a.to_json()) == strip_wall_time(b.to_json()));
    CHECK(a.all_pass());
}

TEST_CASE("zero twist data leaves phi at the base angle") {
    auto cfg = parse_config(
        "{\"schema_version\":1,\"scenario\":\"match-fast-twist\","
        "\"grid\":{\"x_min\":-3,\"x_max\":3,\"n\":2048},\"epsilons\":[0.1],"
        "\"time\":{\"horizon\":0.5,\"cfl\":0.4},"
        "\"profiles\":{\"f\":{\"family\":\"constant\",\"value\":0.0},"
        "\"g\":{\"family\":\"constant\",\"value\":0.0}}}");
    auto rep = run_match_fast_twist(cfg);
    for (const auto& row : rep.series.at("slope_tracking").rows) {
        CHECK(std::abs(row[2]) < 1e-14); // measured
        CHECK(std::abs(row[3]) < 1e-14); // sigma_R
    }
    for (const auto& row : rep.series.at("composite").rows) {
        CHECK(std::abs(row[1]) < 1e-12);
        CHECK(std::abs(row[2]) < 1e-12);
    }
}

TEST_CASE("flagship arithmetic: sigma_R0 and b0' for the reference constants") {
    // alpha=1, beta=2, gamma=3, phi0=pi/4:
    // b0' = -1/(2 sqrt(2.5)), kappa = 1/2, sigma_R0 = -kappa int F_R'^2,
    // and sigma_R0 b0' >= 0 (no blow-up)
    auto cfg = parse_config(
        "{\"schema_version\":1,\"scenario\":\"match-fast-twist\","
        "\"grid\":{\"x_min\":-3,\"x_max\":3,\"n\":2048},\"epsilons\":[0.2,0.1],"
        "\"time\":{\"horizon\":0.5,\"cfl\":0.4}}");
    auto rep = run_match_fast_twist(cfg);
    double b0p = 0, kappa = 0, sigR0 = 0;
    for (const auto& [k, v] : rep.invariants) {
        if (k == "b0_prime") b0p = v;
        if (k == "kappa") kappa = v;
        if (k == "sigma_R0") sigR0 = v;
    }
    CHECK(b0p == doctest::Approx(-1.0 / (2.0 * std::sqrt(2.5))).epsilon(1e-12));
    CHECK(kappa == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(sigR0 < 0.0);
    CHECK(sigR0 * b0p >= 0.0);
    bool found = false;
    for (const auto& c : rep.checks)
        if (c.name == "riccati_no_blowup_sign") {
            CHECK(c.pass);
            found = true;
        }
    CHECK(found);
}

TEST_CASE("hs-verify aggregates the structure checks") {
    auto cfg = parse_config("{\"schema_version\":1,\"scenario\":\"hs-verify\"}");
    auto rep = run_scenario(cfg);
    CHECK(rep.all_pass());
    std::vector<std::string> names;
    for (const auto& c : rep.checks) names.push_back(c.name);
    for (const char* want : {"jacobi_hs", "jacobi_ch", "biham_order_hs", "lax_order",
                             "lax_corruption_ratio", "genhs_order", "jump_law_order"})
        CHECK(std::find(names.begin(), names.end(), want) != names.end());
}

TEST_CASE("twist-exact scenario reports second-order fits") {
    auto cfg = parse_config(
        "{\"schema_version\":1,\"scenario\":\"twist-exact\",\"resolutions\":[256,512,1024]}");
    auto rep = run_scenario(cfg);
    CHECK(rep.all_pass());
    REQUIRE(rep.fitted_order.has_value());
    CHECK(*rep.fitted_order == doctest::Approx(2.0).epsilon(0.1));
    CHECK(rep.convergence.size() == 3);
}

TEST_CASE("report writing produces report.json and series files") {
    auto cfg = parse_config(
        "{\"schema_version\":1,\"scenario\":\"dispersion\",\"samples\":20}");
    auto rep = run_scenario(cfg);
    const std::string dir = "scenario_report_out";
    write_report(rep, dir);
    CHECK(std::filesystem::exists(dir + "/report.json"));
    CHECK(std::filesystem::exists(dir + "/series_sweep.csv"));
    const std::string body = slurp(dir + "/report.json");
    CHECK(body.find("\"scenario\": \"dispersion\"") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("convergence runner covers the solve1d drift study") {
    auto cfg = parse_config(
        "{\"schema_version\":1,\"scenario\":\"solve1d\","
        "\"grid\":{\"x_min\":-4,\"x_max\":4,\"n\":512},\"time\":{\"horizon\":0.25,"
        "\"cfl\":0.4}}");
    auto rep = run_convergence(cfg);
    CHECK(rep.convergence.size() == 3);
    REQUIRE(rep.fitted_order.has_value());
    CHECK(*rep.fitted_order >= 1.6);
}
