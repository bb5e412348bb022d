#pragma once

#include "relaysim/h4qr_sim.hpp"
#include "relaysim/relay_chain.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace relaysim::cli {

struct SweepSpec {
    bool active = false;
    std::string variable = "distance_km";
    double from = 0.0, to = 0.0;
    int steps = 0;
    bool log_scale = false;
};

struct OutputSpec {
    std::string format = "csv"; // csv | json
    std::string path;           // empty = stdout
};

struct SimulationSpec {
    int trials = 10000;
    std::uint64_t seed = 1;
    int threads = 0;
    double max_clocks = 1e9;
};

// Parsed scenario document: INI-style sections with unit-suffixed keys.
struct ScenarioConfig {
    chain::ChainConfig channel = chain::ChainConfig::balloon_defaults();
    chain::JitterSpec jitter;
    rates::RepeaterParams repeater;
    bool eta_ch_from_channel = false; // [repeater] eta_ch = channel
    SweepSpec sweep;
    OutputSpec output;
    SimulationSpec simulation;
    std::string normalized; // canonical key=value dump used for hashing

    static ScenarioConfig parse(const std::string& text);
    static ScenarioConfig load(const std::string& path);
};

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::map<std::string, std::string> meta; // config_hash, tool_version, seed

    std::string to_csv() const;
    std::string to_json() const;
    void write(const OutputSpec& out) const;
};

std::uint64_t config_hash(const ScenarioConfig& cfg);

ResultTable cmd_channel(const ScenarioConfig& cfg);
ResultTable cmd_rate(const ScenarioConfig& cfg);
ResultTable cmd_jitter(const ScenarioConfig& cfg);
ResultTable cmd_simulate(const ScenarioConfig& cfg);
// Bundled scenario reproducing one figure's dataset with pinned seeds.
ResultTable cmd_figure(const std::string& id);
std::vector<std::string> figure_ids();
// The bundled scenario text behind a figure id (exposed for round-tripping).
std::string figure_config(const std::string& id);

} // namespace relaysim::cli
