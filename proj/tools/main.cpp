#include "relaysim/cli.hpp"
#include "relaysim/errors.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <string>

using namespace relaysim;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string output_path;
    std::string format;
    std::int64_t seed = -1;
    int threads = -1;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool config_required) {
    auto* c = cmd->add_option("--config", o.config_path, "scenario config file");
    if (config_required) c->required();
    cmd->add_option("--output", o.output_path, "output file (default stdout)");
    cmd->add_option("--format", o.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", o.seed, "override [simulation] seed");
    cmd->add_option("--threads", o.threads, "override [simulation] threads");
}

cli::ScenarioConfig load_config(const CommonOpts& o, const std::string& fallback = "") {
    cli::ScenarioConfig cfg = o.config_path.empty()
                                  ? cli::ScenarioConfig::parse(fallback)
                                  : cli::ScenarioConfig::load(o.config_path);
    if (o.seed >= 0) cfg.simulation.seed = (std::uint64_t)o.seed;
    if (o.threads >= 0) cfg.simulation.threads = o.threads;
    if (!o.format.empty()) cfg.output.format = o.format;
    if (!o.output_path.empty()) cfg.output.path = o.output_path;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Free-space relay channel and multiplexed repeater toolkit"};
    app.require_subcommand(1);

    CommonOpts opt;
    auto* channel = app.add_subcommand("channel", "relay-chain efficiency budget / sweep");
    auto* rate = app.add_subcommand("rate", "entanglement distribution time bounds + MC");
    auto* jitter = app.add_subcommand("jitter", "platform-drift Monte Carlo");
    auto* simulate = app.add_subcommand("simulate", "repeater Monte Carlo only");
    auto* figure = app.add_subcommand("figure", "emit a bundled canonical dataset");
    for (auto* cmd : {channel, rate, jitter, simulate})
        add_common(cmd, opt, cmd != channel && cmd != jitter);
    std::string figure_id;
    figure->add_option("id", figure_id, "figure id")->required();
    add_common(figure, opt, false);

    CLI11_PARSE(app, argc, argv);

    try {
        cli::ResultTable table;
        cli::OutputSpec out;
        if (figure->parsed()) {
            table = cli::cmd_figure(figure_id);
            out.format = opt.format.empty() ? "csv" : opt.format;
            out.path = opt.output_path;
        } else {
            const cli::ScenarioConfig cfg = load_config(opt);
            if (channel->parsed()) table = cli::cmd_channel(cfg);
            else if (rate->parsed()) table = cli::cmd_rate(cfg);
            else if (jitter->parsed()) table = cli::cmd_jitter(cfg);
            else table = cli::cmd_simulate(cfg);
            out = cfg.output;
        }
        table.write(out);
        return 0;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
