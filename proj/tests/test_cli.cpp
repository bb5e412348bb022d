#include "relaysim/cli.hpp"
#include "relaysim/errors.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <string>

using namespace relaysim;
using namespace relaysim::cli;

namespace {

bool throws_mentioning(const std::string& text, const std::string& needle) {
    try {
        ScenarioConfig::parse(text);
    } catch (const ConfigError& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
}

} // namespace

TEST_CASE("minimal config gets the documented defaults") {
    const auto cfg = ScenarioConfig::parse("[channel]\nplatform = balloon\n");
    CHECK(cfg.channel.platform == chain::Platform::Balloon);
    CHECK(cfg.channel.relay_count == 0); // 0 = optimize over N
    CHECK(cfg.channel.platform_alt_km == doctest::Approx(24.0));
    CHECK(cfg.simulation.trials == 10000);
    CHECK(cfg.simulation.seed == 1);
    CHECK(cfg.output.format == "csv");
    CHECK_FALSE(cfg.sweep.active);
    CHECK_FALSE(cfg.eta_ch_from_channel);
}

TEST_CASE("channel keys are applied") {
    const auto cfg = ScenarioConfig::parse(
        "[channel]\n"
        "platform = satellite\n"
        "distance_km = 12000\n"
        "relay_count = 7\n"
        "eta_t = 0.9\n"
        "policy = midpath\n"
        "ao_enabled = false\n"
        "wind_mps = 0\n");
    CHECK(cfg.channel.platform == chain::Platform::Satellite);
    CHECK(cfg.channel.ground_distance_km == doctest::Approx(12000.0));
    CHECK(cfg.channel.relay_count == 7);
    CHECK(cfg.channel.eta_t == doctest::Approx(0.9));
    CHECK(cfg.channel.policy == chain::WaistPolicy::MidPath);
    CHECK_FALSE(cfg.channel.ao.enabled);
    CHECK(cfg.channel.wind_mps == 0.0);
    // satellite defaults fill the rest
    CHECK(cfg.channel.platform_alt_km == doctest::Approx(500.0));
    CHECK(cfg.channel.horizontal_vacuum);
}

TEST_CASE("repeater, sweep, output and simulation sections") {
    const auto cfg = ScenarioConfig::parse(
        "[repeater]\n"
        "eta_ch = channel\n"
        "distance_km = 3000\n"
        "modes_m = 100\n"
        "modes_n = 5\n"
        "tau_s = inf\n"
        "[sweep]\n"
        "variable = distance_km\nfrom = 1000\nto = 20000\nsteps = 7\nscale = log\n"
        "[output]\nformat = json\n"
        "[simulation]\ntrials = 55\nseed = 42\n");
    CHECK(cfg.eta_ch_from_channel);
    CHECK(cfg.repeater.distance_km == doctest::Approx(3000.0));
    CHECK(cfg.repeater.m == 100);
    CHECK(cfg.repeater.n == 5);
    CHECK(std::isinf(cfg.repeater.tau_s));
    CHECK(cfg.sweep.active);
    CHECK(cfg.sweep.log_scale);
    CHECK(cfg.sweep.steps == 7);
    CHECK(cfg.output.format == "json");
    CHECK(cfg.simulation.trials == 55);
    CHECK(cfg.simulation.seed == 42);
}

TEST_CASE("malformed configs are rejected with the offending name") {
    CHECK(throws_mentioning("[channel]\nfrobnicate = 1\n", "frobnicate"));
    CHECK(throws_mentioning("[warp]\nx = 1\n", "[warp]"));
    CHECK(throws_mentioning("[channel]\neta_t = 0.9\neta_t = 0.8\n", "duplicate key 'eta_t'"));
    CHECK(throws_mentioning("eta_t = 0.9\n", "outside any section"));
    CHECK(throws_mentioning("[channel]\neta_t\n", "expected key = value"));
    CHECK(throws_mentioning("[channel]\neta_t = many\n", "expected a number"));
    CHECK(throws_mentioning("[channel]\nao_enabled = maybe\n", "expected a boolean"));
    CHECK(throws_mentioning("[channel]\nplatform = blimp\n", "blimp"));
    CHECK(throws_mentioning("[channel]\npolicy = sideways\n", "sideways"));
    CHECK(throws_mentioning("[sweep]\nscale = cubic\n", "cubic"));
    CHECK(throws_mentioning("[output]\nformat = yaml\n", "yaml"));
    CHECK_THROWS_AS(ScenarioConfig::load("/nonexistent/scenario.ini"), ConfigError);
}

TEST_CASE("config hash is stable and sensitive") {
    const std::string text = "[channel]\nplatform = balloon\ndistance_km = 2000\n";
    const auto a = ScenarioConfig::parse(text);
    const auto b = ScenarioConfig::parse(text);
    CHECK(config_hash(a) == config_hash(b));
    const auto c = ScenarioConfig::parse("[channel]\nplatform = balloon\ndistance_km = 2001\n");
    CHECK(config_hash(a) != config_hash(c));
    const auto d = ScenarioConfig::parse(text + "[simulation]\nseed = 2\n");
    CHECK(config_hash(a) != config_hash(d));
}

TEST_CASE("rate command emits bounds and simulation columns") {
    const auto cfg = ScenarioConfig::parse(
        "[repeater]\neta_ch = 0.01\ndistance_km = 3000\n"
        "[simulation]\ntrials = 200\nseed = 3\n");
    const auto t = cmd_rate(cfg);
    REQUIRE(t.columns == std::vector<std::string>{"distance_km", "time_upper_s",
                                                  "time_lower_s", "time_mc_s", "mc_stderr_s"});
    REQUIRE(t.rows.size() == 1);
    const auto& r = t.rows[0];
    CHECK(r[0] == doctest::Approx(3000.0));
    CHECK(r[1] == doctest::Approx(1.5402731053655112).epsilon(1e-9)); // collins oracle
    CHECK(r[2] == doctest::Approx(1.3394457506738595).epsilon(1e-9)); // markov oracle
    // the Monte Carlo lands in the right decade and reports its error
    CHECK(r[3] > 0.5 * r[2]);
    CHECK(r[3] < 2.0 * r[1]);
    CHECK(r[4] > 0.0);
    CHECK(t.meta.count("config_hash") == 1);
    CHECK(t.meta.at("seed") == "3");
}

TEST_CASE("rate sweep covers repeater variables") {
    const auto cfg = ScenarioConfig::parse(
        "[repeater]\neta_ch = 0.01\n"
        "[sweep]\nvariable = eta_m\nfrom = 0.5\nto = 0.9\nsteps = 5\n"
        "[simulation]\ntrials = 0\n");
    const auto t = cmd_rate(cfg);
    REQUIRE(t.rows.size() == 5);
    CHECK(t.rows.front()[0] == doctest::Approx(0.5));
    CHECK(t.rows.back()[0] == doctest::Approx(0.9));
    // better memories mean faster distribution
    CHECK(t.rows.front()[2] > t.rows.back()[2]);
    // trials = 0 disables the Monte Carlo column
    CHECK(std::isnan(t.rows.front()[3]));

    const auto bad = ScenarioConfig::parse(
        "[repeater]\neta_ch = 0.01\n[sweep]\nvariable = warp\nfrom = 1\nto = 2\nsteps = 2\n");
    CHECK_THROWS_AS(cmd_rate(bad), ConfigError);
}

TEST_CASE("channel command columns and fixed relay count") {
    const auto cfg = ScenarioConfig::parse(
        "[channel]\nplatform = balloon\ndistance_km = 2000\nrelay_count = 25\n");
    const auto t = cmd_channel(cfg);
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0][1] == doctest::Approx(25.0));
    CHECK(t.columns[3] == "total_db");
    CHECK(t.rows[0][3] < 0.0);
}

TEST_CASE("infeasible sweep points become NaN rows, not errors") {
    const auto cfg = ScenarioConfig::parse(
        "[channel]\nplatform = balloon\ndistance_km = 2000\nrelay_count = 2\n");
    const auto t = cmd_channel(cfg); // a single 2000 km crosslink at 24 km: obstructed
    REQUIRE(t.rows.size() == 1);
    CHECK(std::isnan(t.rows[0][3]));
    // and the CSV serializes it as nan without breaking the shape
    const auto csv = t.to_csv();
    CHECK(csv.find("NaN") != std::string::npos);
}

TEST_CASE("CSV and JSON round-trip the same table") {
    const auto cfg = ScenarioConfig::parse(
        "[repeater]\neta_ch = 0.01\ndistance_km = 3000\n[simulation]\ntrials = 0\n");
    auto t = cmd_rate(cfg);
    const auto csv = t.to_csv();
    CHECK(csv.find("# config_hash = ") != std::string::npos);
    CHECK(csv.find("distance_km,time_upper_s,time_lower_s,time_mc_s,mc_stderr_s\n") !=
          std::string::npos);
    const auto j = nlohmann::json::parse(t.to_json());
    REQUIRE(j["rows"].size() == t.rows.size());
    CHECK(j["columns"].size() == t.columns.size());
    CHECK(j["rows"][0]["time_upper_s"].get<double>() ==
          doctest::Approx(t.rows[0][1]).epsilon(1e-12));
    CHECK(j["rows"][0]["time_mc_s"].is_null()); // NaN maps to null
    CHECK(j["meta"]["config_hash"] == t.meta["config_hash"]);
}

TEST_CASE("figure registry") {
    const auto ids = figure_ids();
    for (const char* id : {"fig2a", "fig2b", "fig3", "fig4", "fig6", "fig7", "fig8"})
        CHECK(std::find(ids.begin(), ids.end(), id) != ids.end());
    // every id round-trips through the config parser
    for (const auto& id : ids) CHECK_NOTHROW(ScenarioConfig::parse(figure_config(id)));
    try {
        cmd_figure("fig99");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string what = e.what();
        CHECK(what.find("fig99") != std::string::npos);
        CHECK(what.find("fig4") != std::string::npos); // lists the valid ids
    }
}

TEST_CASE("figure output is byte-identical across runs") {
    const auto a = cmd_figure("fig4").to_csv();
    const auto b = cmd_figure("fig4").to_csv();
    CHECK(a == b);
    CHECK(a.find("kappa,edr_dependent_hz,edr_independent_hz") != std::string::npos);
}
