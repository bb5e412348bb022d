#include "relaysim/cli.hpp"
#include "relaysim/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

namespace relaysim::cli {

namespace {

constexpr const char* kToolVersion = "1.0.0";

using SectionMap = std::map<std::string, std::map<std::string, std::string>>;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

SectionMap parse_ini(const std::string& text) {
    SectionMap out;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            out[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        if (section.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": key outside any section");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
        if (!out[section].emplace(key, val).second)
            throw ConfigError("duplicate key '" + key + "' in [" + section + "]");
    }
    return out;
}

double to_double(const std::string& section, const std::string& key, const std::string& v) {
    if (v == "inf" || v == "infinity") return std::numeric_limits<double>::infinity();
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("[" + section + "] " + key + ": expected a number, got '" + v + "'");
    }
}

int to_int(const std::string& section, const std::string& key, const std::string& v) {
    const double d = to_double(section, key, v);
    if (d != std::floor(d))
        throw ConfigError("[" + section + "] " + key + ": expected an integer, got '" + v + "'");
    return (int)d;
}

bool to_bool(const std::string& section, const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("[" + section + "] " + key + ": expected a boolean, got '" + v + "'");
}

// Pull-style reader that tracks which keys were consumed so leftovers can be
// rejected by name.
struct Section {
    std::string name;
    std::map<std::string, std::string> kv;

    bool has(const std::string& k) const { return kv.count(k) != 0; }
    std::string str(const std::string& k, std::string dflt) {
        auto it = kv.find(k);
        if (it == kv.end()) return dflt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    }
    double num(const std::string& k, double dflt) {
        auto it = kv.find(k);
        if (it == kv.end()) return dflt;
        const double v = to_double(name, k, it->second);
        kv.erase(it);
        return v;
    }
    int integer(const std::string& k, int dflt) {
        auto it = kv.find(k);
        if (it == kv.end()) return dflt;
        const int v = to_int(name, k, it->second);
        kv.erase(it);
        return v;
    }
    bool flag(const std::string& k, bool dflt) {
        auto it = kv.find(k);
        if (it == kv.end()) return dflt;
        const bool v = to_bool(name, k, it->second);
        kv.erase(it);
        return v;
    }
    void reject_leftovers() const {
        if (!kv.empty())
            throw ConfigError("unknown key '" + kv.begin()->first + "' in [" + name + "]");
    }
};

std::string data_dir() {
    const char* env = std::getenv("RELAYSIM_DATA_DIR");
    return env ? env : "";
}

atmo::AttenuationProfile resolve_attenuation(const std::string& spec) {
    if (spec == "builtin") return atmo::AttenuationProfile::builtin_1537nm();
    if (spec == "vacuum") return atmo::AttenuationProfile::vacuum();
    std::string path = spec;
    if (!path.empty() && path.front() != '/' && !data_dir().empty())
        path = data_dir() + "/" + path;
    return atmo::AttenuationProfile::load(path);
}

void apply_channel(Section& s, chain::ChainConfig& c) {
    const std::string platform = s.str("platform", "");
    if (!platform.empty()) {
        if (platform == "balloon") {
            c = chain::ChainConfig::balloon_defaults();
        } else if (platform == "satellite") {
            c = chain::ChainConfig::satellite_defaults();
        } else {
            throw ConfigError("[channel] platform: expected balloon|satellite, got '" +
                              platform + "'");
        }
    }
    c.ground_distance_km = s.num("distance_km", c.ground_distance_km);
    c.relay_count = s.integer("relay_count", 0); // 0 = optimize over N
    c.platform_alt_km = s.num("platform_alt_km", c.platform_alt_km);
    c.ground_alt_km = s.num("ground_alt_km", c.ground_alt_km);
    c.wavelength_m = s.num("wavelength_nm", c.wavelength_m * 1e9) * 1e-9;
    c.eta_t = s.num("eta_t", c.eta_t);
    c.eta_r = s.num("eta_r", c.eta_r);
    c.Dt_up = s.num("dt_up_m", c.Dt_up);
    c.Dr_up = s.num("dr_up_m", c.Dr_up);
    c.Dt_hor = s.num("dt_hor_m", c.Dt_hor);
    c.Dr_hor = s.num("dr_hor_m", c.Dr_hor);
    c.Dt_down = s.num("dt_down_m", c.Dt_down);
    c.Dr_down = s.num("dr_down_m", c.Dr_down);
    c.wind_mps = s.num("wind_mps", c.wind_mps);
    c.horizontal_vacuum = s.flag("horizontal_vacuum", c.horizontal_vacuum);

    const std::string policy = s.str("policy", "");
    if (!policy.empty()) {
        if (policy == "optimized") c.policy = chain::WaistPolicy::Optimized;
        else if (policy == "midpath") c.policy = chain::WaistPolicy::MidPath;
        else if (policy == "tx") c.policy = chain::WaistPolicy::TxWaist;
        else
            throw ConfigError("[channel] policy: expected optimized|midpath|tx, got '" +
                              policy + "'");
    }

    c.ao.enabled = s.flag("ao_enabled", c.ao.enabled);
    const std::string ao_model = s.str("ao_model", "");
    if (!ao_model.empty()) {
        if (ao_model == "ideal") c.ao.model = coupling::AOModel::IdealCutoff;
        else if (ao_model == "temporal") c.ao.model = coupling::AOModel::TemporalResidual;
        else
            throw ConfigError("[channel] ao_model: expected ideal|temporal, got '" +
                              ao_model + "'");
    }
    c.ao.corrected_orders = s.integer("ao_orders", c.ao.corrected_orders);
    c.ao.gain = s.num("ao_gain", c.ao.gain);
    c.ao.delay_s = s.num("ao_delay_ms", c.ao.delay_s * 1e3) * 1e-3;
    c.ao.integration_s = s.num("ao_integration_ms", c.ao.integration_s * 1e3) * 1e-3;
    c.ao.wind_mps = s.num("ao_wind_mps", c.ao.wind_mps);

    const std::string cn2 = s.str("cn2", "");
    if (!cn2.empty()) {
        if (cn2 == "hv57") c.cn2 = atmo::Cn2Profile::hv57();
        else if (cn2 == "vacuum") c.cn2 = atmo::Cn2Profile::zero();
        else
            throw ConfigError("[channel] cn2: expected hv57|vacuum, got '" + cn2 + "'");
    }
    const std::string att = s.str("attenuation", "");
    if (!att.empty()) c.atten = resolve_attenuation(att);
}

void apply_repeater(Section& s, rates::RepeaterParams& r, bool& from_channel) {
    const std::string eta_ch = s.str("eta_ch", "");
    if (eta_ch == "channel") {
        from_channel = true;
    } else if (!eta_ch.empty()) {
        r.eta_ch = to_double("repeater", "eta_ch", eta_ch);
        from_channel = false;
    }
    r.distance_km = s.num("distance_km", r.distance_km);
    r.eta_m = s.num("eta_m", r.eta_m);
    r.eta_d = s.num("eta_d", r.eta_d);
    r.rho = s.num("rho", r.rho);
    r.rate_hz = s.num("rate_hz", r.rate_hz);
    r.m = s.integer("modes_m", r.m);
    r.n = s.integer("modes_n", r.n);
    r.tau_s = s.num("tau_s", r.tau_s);
    r.fiber_km = s.num("fiber_km", r.fiber_km);
    r.fiber_db_per_km = s.num("fiber_db_per_km", r.fiber_db_per_km);
    r.fiber_constraint = s.flag("fiber_constraint", r.fiber_constraint);
    r.signal_speed = s.num("signal_speed_mps", r.signal_speed);
}

std::string normalize(const SectionMap& sections) {
    std::string out;
    for (const auto& [name, kv] : sections) {
        out += "[" + name + "]\n";
        for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
    }
    return out;
}

std::string fmt(double v) {
    if (std::isnan(v)) return "NaN";
    std::ostringstream ss;
    ss.precision(12);
    ss << v;
    return ss.str();
}

double db(double lin) { return 10.0 * std::log10(lin); }

std::vector<double> sweep_values(const SweepSpec& s) {
    std::vector<double> v;
    if (s.steps < 2) {
        v.push_back(s.from);
        return v;
    }
    for (int i = 0; i < s.steps; ++i) {
        const double t = double(i) / (s.steps - 1);
        v.push_back(s.log_scale
                        ? s.from * std::pow(s.to / s.from, t)
                        : s.from + (s.to - s.from) * t);
    }
    return v;
}

// Per-segment free-space efficiency feeding the repeater: best relay chain
// over half the server separation (each segment spans server to mid-station).
double segment_eta_ch(const ScenarioConfig& cfg, double distance_km) {
    chain::ChainConfig c = cfg.channel;
    c.ground_distance_km = distance_km / 2.0;
    return chain::optimize_relay_count(c).best.total;
}

void set_meta(ResultTable& t, const ScenarioConfig& cfg) {
    std::ostringstream h;
    h << std::hex << config_hash(cfg);
    t.meta["config_hash"] = h.str();
    t.meta["tool_version"] = kToolVersion;
    t.meta["seed"] = std::to_string(cfg.simulation.seed);
}

} // namespace

ScenarioConfig ScenarioConfig::parse(const std::string& text) {
    SectionMap sections = parse_ini(text);
    ScenarioConfig cfg;
    cfg.normalized = normalize(sections);
    for (auto& [name, kv] : sections) {
        Section s{name, kv};
        if (name == "channel") {
            cfg.jitter.endpoint_km = s.num("jitter_endpoint_km", cfg.jitter.endpoint_km);
            cfg.jitter.relay_frac = s.num("jitter_relay_frac", cfg.jitter.relay_frac);
            apply_channel(s, cfg.channel);
        } else if (name == "repeater") {
            apply_repeater(s, cfg.repeater, cfg.eta_ch_from_channel);
        } else if (name == "sweep") {
            cfg.sweep.active = true;
            cfg.sweep.variable = s.str("variable", cfg.sweep.variable);
            cfg.sweep.from = s.num("from", cfg.sweep.from);
            cfg.sweep.to = s.num("to", cfg.sweep.to);
            cfg.sweep.steps = s.integer("steps", cfg.sweep.steps);
            const std::string scale = s.str("scale", "linear");
            if (scale == "log") cfg.sweep.log_scale = true;
            else if (scale == "linear") cfg.sweep.log_scale = false;
            else throw ConfigError("[sweep] scale: expected linear|log, got '" + scale + "'");
        } else if (name == "output") {
            cfg.output.format = s.str("format", cfg.output.format);
            if (cfg.output.format != "csv" && cfg.output.format != "json")
                throw ConfigError("[output] format: expected csv|json, got '" +
                                  cfg.output.format + "'");
            cfg.output.path = s.str("path", cfg.output.path);
        } else if (name == "simulation") {
            cfg.simulation.trials = s.integer("trials", cfg.simulation.trials);
            cfg.simulation.seed = (std::uint64_t)s.num("seed", (double)cfg.simulation.seed);
            cfg.simulation.threads = s.integer("threads", cfg.simulation.threads);
            cfg.simulation.max_clocks = s.num("max_clocks", cfg.simulation.max_clocks);
        } else {
            throw ConfigError("unknown section [" + name + "]");
        }
        s.reject_leftovers();
    }
    return cfg;
}

ScenarioConfig ScenarioConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::uint64_t config_hash(const ScenarioConfig& cfg) {
    // FNV-1a over the normalized document plus the effective seed.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
    };
    mix(cfg.normalized);
    mix("seed=" + std::to_string(cfg.simulation.seed));
    return h;
}

std::string ResultTable::to_csv() const {
    std::string out;
    for (const auto& [k, v] : meta) out += "# " + k + " = " + v + "\n";
    for (std::size_t i = 0; i < columns.size(); ++i)
        out += (i ? "," : "") + columns[i];
    out += "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out += (i ? "," : "") + fmt(row[i]);
        out += "\n";
    }
    return out;
}

std::string ResultTable::to_json() const {
    nlohmann::json j;
    j["meta"] = meta;
    j["columns"] = columns;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json obj;
        for (std::size_t i = 0; i < row.size(); ++i)
            obj[columns[i]] = std::isnan(row[i]) ? nlohmann::json() : nlohmann::json(row[i]);
        j["rows"].push_back(obj);
    }
    return j.dump(2) + "\n";
}

void ResultTable::write(const OutputSpec& out) const {
    const std::string body = out.format == "json" ? to_json() : to_csv();
    if (out.path.empty()) {
        std::fputs(body.c_str(), stdout);
        return;
    }
    std::ofstream f(out.path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file: " + out.path);
    f << body;
}

ResultTable cmd_channel(const ScenarioConfig& cfg) {
    ResultTable t;
    t.columns = {"distance_km", "relay_count",  "policy",  "total_db", "optics_db",
                 "atm_db",      "collection_db", "smf0_db", "ao_db",    "scint_db"};
    set_meta(t, cfg);
    std::vector<double> distances = cfg.sweep.active && cfg.sweep.variable == "distance_km"
                                        ? sweep_values(cfg.sweep)
                                        : std::vector<double>{cfg.channel.ground_distance_km};
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (double L : distances) {
        chain::ChainConfig c = cfg.channel;
        c.ground_distance_km = L;
        try {
            chain::ChannelBudget b;
            if (c.relay_count > 0) {
                b = chain::chain_budget(c);
            } else {
                b = chain::optimize_relay_count(c).best;
            }
            const int hops = b.relay_count + 1;
            const double optics = hops * db(b.up.eta_optics);
            const double atm = db(b.up.eta_atm) + db(b.down.eta_atm) +
                               (b.relay_count - 1) * db(b.horizontal.eta_atm);
            const double col = db(b.up.eta_col) + db(b.down.eta_col) +
                               (b.relay_count - 1) * db(b.horizontal.eta_col);
            t.rows.push_back({L, (double)b.relay_count, (double)(int)c.policy, b.total_db,
                              optics, atm, col, db(kEta0Smf), db(b.eta_ao), db(b.eta_s)});
        } catch (const ObstructedPath&) {
            t.rows.push_back({L, nan, (double)(int)c.policy, nan, nan, nan, nan, nan, nan, nan});
        } catch (const EmptyFeasibleSet&) {
            t.rows.push_back({L, nan, (double)(int)c.policy, nan, nan, nan, nan, nan, nan, nan});
        }
    }
    return t;
}

ResultTable cmd_rate(const ScenarioConfig& cfg) {
    ResultTable t;
    t.columns = {"distance_km", "time_upper_s", "time_lower_s", "time_mc_s", "mc_stderr_s"};
    set_meta(t, cfg);
    std::vector<double> xs = cfg.sweep.active ? sweep_values(cfg.sweep)
                                              : std::vector<double>{cfg.repeater.distance_km};
    for (double x : xs) {
        rates::RepeaterParams p = cfg.repeater;
        if (cfg.sweep.active) {
            const std::string& var = cfg.sweep.variable;
            if (var == "distance_km") p.distance_km = x;
            else if (var == "eta_m") p.eta_m = x;
            else if (var == "eta_d") p.eta_d = x;
            else if (var == "rho") p.rho = x;
            else if (var == "tau_s") p.tau_s = x;
            else if (var == "modes_m") p.m = (int)x;
            else if (var == "modes_n") p.n = (int)x;
            else
                throw ConfigError("[sweep] variable: unknown repeater variable '" + var + "'");
        }
        if (cfg.eta_ch_from_channel) p.eta_ch = segment_eta_ch(cfg, p.distance_km);
        const rates::RateEstimate est = rates::analytic_times(p);
        double mc = std::numeric_limits<double>::quiet_NaN();
        double mc_err = std::numeric_limits<double>::quiet_NaN();
        if (cfg.simulation.trials > 0) {
            rates::SimConfig sc;
            sc.params = p;
            sc.trials = cfg.simulation.trials;
            sc.seed = cfg.simulation.seed;
            sc.threads = cfg.simulation.threads;
            sc.max_clocks = cfg.simulation.max_clocks;
            const rates::SimResult r = rates::simulate(sc);
            mc = r.mean_s;
            mc_err = r.stderr_s;
        }
        t.rows.push_back({x, est.collins_s, est.markov_s, mc, mc_err});
    }
    return t;
}

ResultTable cmd_jitter(const ScenarioConfig& cfg) {
    ResultTable t;
    t.columns = {"distance_km", "ideal_db", "jitter_mean_db", "jitter_std_db", "failure_rate"};
    set_meta(t, cfg);
    std::vector<double> distances = cfg.sweep.active && cfg.sweep.variable == "distance_km"
                                        ? sweep_values(cfg.sweep)
                                        : std::vector<double>{cfg.channel.ground_distance_km};
    for (double L : distances) {
        chain::ChainConfig c = cfg.channel;
        c.ground_distance_km = L;
        chain::JitterSpec spec = cfg.jitter;
        spec.seed = cfg.simulation.seed;
        if (cfg.simulation.trials > 0) spec.trials = cfg.simulation.trials;
        if (c.relay_count <= 0) c.relay_count = chain::optimize_relay_count(c).best_relay_count;
        const chain::JitterResult r = chain::jitter_monte_carlo(c, spec);
        t.rows.push_back({L, r.ideal_db, r.mean_db, r.std_db,
                          r.trials ? (double)r.failures / r.trials : 0.0});
    }
    return t;
}

ResultTable cmd_simulate(const ScenarioConfig& cfg) {
    ResultTable t;
    t.columns = {"distance_km", "time_mc_s", "mc_stderr_s", "mean_clocks", "trials", "timeouts"};
    set_meta(t, cfg);
    rates::RepeaterParams p = cfg.repeater;
    if (cfg.eta_ch_from_channel) p.eta_ch = segment_eta_ch(cfg, p.distance_km);
    rates::SimConfig sc;
    sc.params = p;
    sc.trials = cfg.simulation.trials;
    sc.seed = cfg.simulation.seed;
    sc.threads = cfg.simulation.threads;
    sc.max_clocks = cfg.simulation.max_clocks;
    const rates::SimResult r = rates::simulate(sc);
    t.rows.push_back({p.distance_km, r.mean_s, r.stderr_s, r.mean_clocks, (double)r.trials,
                      (double)r.timeouts});
    return t;
}

namespace {

const std::map<std::string, std::string>& figure_configs() {
    static const std::map<std::string, std::string> figs = {
        {"fig2a",
         "[channel]\nplatform = balloon\n"
         "[sweep]\nvariable = distance_km\nfrom = 500\nto = 20000\nsteps = 25\nscale = log\n"},
        {"fig2b",
         "[channel]\nplatform = balloon\nao_enabled = false\n"
         "[sweep]\nvariable = distance_km\nfrom = 500\nto = 20000\nsteps = 25\nscale = log\n"},
        {"fig3",
         "[channel]\nplatform = balloon\n"
         "[repeater]\neta_ch = channel\n"
         "[sweep]\nvariable = distance_km\nfrom = 500\nto = 20000\nsteps = 13\nscale = log\n"
         "[simulation]\ntrials = 2000\nseed = 7\n"},
        {"fig4",
         "[channel]\nplatform = balloon\n"
         "[repeater]\neta_ch = channel\ndistance_km = 3000\n"},
        {"fig6",
         "[channel]\nplatform = balloon\n"
         "[simulation]\ntrials = 200\nseed = 11\n"},
        {"fig7",
         "[channel]\nplatform = balloon\n"
         "[sweep]\nvariable = distance_km\nfrom = 2000\nto = 20000\nsteps = 13\nscale = log\n"},
        {"fig8",
         "[channel]\nplatform = balloon\n"
         "[repeater]\neta_ch = channel\ndistance_km = 3000\n"},
    };
    return figs;
}

ResultTable figure_fig2a(const ScenarioConfig& cfg) {
    ResultTable t;
    t.columns = {"distance_km", "relay_count", "total_db", "envelope"};
    set_meta(t, cfg);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    static const int fixed_n[] = {10, 20, 40, 80, 160};
    for (double L : sweep_values(cfg.sweep)) {
        chain::ChainConfig c = cfg.channel;
        c.ground_distance_km = L;
        chain::EnvelopeResult env;
        try {
            env = chain::optimize_relay_count(c);
        } catch (const EmptyFeasibleSet&) {
            t.rows.push_back({L, nan, nan, 1.0});
            continue;
        }
        t.rows.push_back({L, (double)env.best_relay_count, env.best.total_db, 1.0});
        for (int n : fixed_n) {
            double v = nan;
            for (const auto& pt : env.points)
                if (pt.relay_count == n && pt.feasible) v = pt.total_db;
            t.rows.push_back({L, (double)n, v, 0.0});
        }
    }
    return t;
}

ResultTable figure_fig2b(const ScenarioConfig& cfg) {
    ResultTable t;
    t.columns = {"distance_km", "optimized_db", "midpath_db", "tx_db"};
    set_meta(t, cfg);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (double L : sweep_values(cfg.sweep)) {
        std::vector<double> row = {L, nan, nan, nan};
        // Relay placement fixed by the optimized-policy envelope so the three
        // curves differ only in waist choice.
        chain::ChainConfig c = cfg.channel;
        c.ground_distance_km = L;
        c.policy = chain::WaistPolicy::Optimized;
        int best_n = 0;
        try {
            best_n = chain::optimize_relay_count(c).best_relay_count;
        } catch (const EmptyFeasibleSet&) {
            t.rows.push_back(row);
            continue;
        }
        const chain::WaistPolicy policies[] = {chain::WaistPolicy::Optimized,
                                               chain::WaistPolicy::MidPath,
                                               chain::WaistPolicy::TxWaist};
        for (int i = 0; i < 3; ++i) {
            c.policy = policies[i];
            c.relay_count = best_n;
            try {
                row[1 + i] = chain::chain_budget(c).total_db;
            } catch (const NegativeShortTerm&) {
            } catch (const EmptyFeasibleSet&) {
            }
        }
        t.rows.push_back(row);
    }
    return t;
}

ResultTable figure_fig4(const ScenarioConfig& cfg) {
    ResultTable t;
    t.columns = {"kappa", "edr_dependent_hz", "edr_independent_hz"};
    set_meta(t, cfg);
    rates::RepeaterParams p = cfg.repeater;
    if (cfg.eta_ch_from_channel) p.eta_ch = segment_eta_ch(cfg, p.distance_km);
    const double p_single = rates::p_single(p);
    const double p1 = rates::p1(p);
    const double clock = 2.0 * p.length_m() / p.signal_speed;
    for (int kappa : {1, 2, 5, 10, 20, 50, 100, 200, 500, 1000, 2000}) {
        const double fd = rates::mode_efficiency(rates::ModeKind::Dependent, kappa, p_single);
        const double fi = rates::mode_efficiency(rates::ModeKind::Independent, kappa, p_single);
        t.rows.push_back({(double)kappa, kappa * p_single * p1 * fd / clock,
                          kappa * p_single * p1 * fi / clock});
    }
    return t;
}

ResultTable figure_fig6(const ScenarioConfig& cfg) {
    ResultTable t;
    t.columns = {"distance_km", "spec",         "ideal_db",
                 "mean_db",     "jitter_std_db", "failure_rate"};
    set_meta(t, cfg);
    for (double L : {2000.0, 5000.0, 10000.0, 15000.0, 20000.0}) {
        chain::ChainConfig c = cfg.channel;
        c.ground_distance_km = L;
        c.relay_count = chain::optimize_relay_count(c).best_relay_count;
        for (int which : {0, 1}) {
            chain::JitterSpec spec;
            spec.trials = cfg.simulation.trials;
            spec.seed = cfg.simulation.seed + which;
            if (which == 1) {
                spec.endpoint_km *= 2.0;
                spec.relay_frac *= 2.0;
            }
            const chain::JitterResult r = chain::jitter_monte_carlo(c, spec);
            t.rows.push_back({L, (double)which, r.ideal_db, r.mean_db, r.std_db,
                              r.trials ? (double)r.failures / r.trials : 0.0});
        }
    }
    return t;
}

ResultTable figure_fig7(const ScenarioConfig& cfg) {
    ResultTable t;
    t.columns = {"distance_km", "balloon_db", "satellite_db"};
    set_meta(t, cfg);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (double L : sweep_values(cfg.sweep)) {
        std::vector<double> row = {L, nan, nan};
        for (int i = 0; i < 2; ++i) {
            chain::ChainConfig c = i == 0 ? chain::ChainConfig::balloon_defaults()
                                          : chain::ChainConfig::satellite_defaults();
            c.ground_distance_km = L;
            try {
                row[1 + i] = chain::optimize_relay_count(c).best.total_db;
            } catch (const EmptyFeasibleSet&) {
            }
        }
        t.rows.push_back(row);
    }
    return t;
}

ResultTable figure_fig8(const ScenarioConfig& cfg) {
    ResultTable t;
    t.columns = {"panel", "x", "time_upper_s", "time_lower_s"};
    set_meta(t, cfg);
    rates::RepeaterParams base = cfg.repeater;
    if (cfg.eta_ch_from_channel) base.eta_ch = segment_eta_ch(cfg, base.distance_km);
    auto panel = [&](int id, const std::vector<double>& xs, auto&& set) {
        for (double x : xs) {
            rates::RepeaterParams p = base;
            set(p, x);
            const rates::RateEstimate est = rates::analytic_times(p);
            t.rows.push_back({(double)id, x, est.collins_s, est.markov_s});
        }
    };
    auto lin = [](double a, double b, int n) {
        std::vector<double> v;
        for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
        return v;
    };
    panel(0, lin(0.1, 1.0, 19), [](auto& p, double x) { p.eta_m = x; });
    panel(1, lin(0.1, 1.0, 19), [](auto& p, double x) { p.eta_d = x; });
    panel(2, lin(0.01, 0.25, 25), [](auto& p, double x) {
        p.rho = x;
        p.m = 10;
    });
    panel(3, {1, 2, 5, 10, 20, 50, 100, 200, 500, 1000, 2000},
          [](auto& p, double x) { p.m = (int)x; });
    panel(4, {1, 2, 3, 4, 5, 6, 8, 10, 15, 20, 30, 40}, [](auto& p, double x) {
        p.n = (int)x;
        p.m = 20;
    });
    panel(5, {0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0,
              std::numeric_limits<double>::infinity()},
          [](auto& p, double x) {
              p.tau_s = x;
              p.m = 100;
          });
    return t;
}

} // namespace

std::vector<std::string> figure_ids() {
    std::vector<std::string> ids;
    for (const auto& [k, v] : figure_configs()) ids.push_back(k);
    return ids;
}

std::string figure_config(const std::string& id) {
    const auto& figs = figure_configs();
    auto it = figs.find(id);
    if (it == figs.end()) {
        std::string msg = "unknown figure id '" + id + "'; valid ids:";
        for (const auto& [k, v] : figs) msg += " " + k;
        throw ConfigError(msg);
    }
    return it->second;
}

ResultTable cmd_figure(const std::string& id) {
    const ScenarioConfig cfg = ScenarioConfig::parse(figure_config(id));
    if (id == "fig2a") return figure_fig2a(cfg);
    if (id == "fig2b") return figure_fig2b(cfg);
    if (id == "fig3") return cmd_rate(cfg);
    if (id == "fig4") return figure_fig4(cfg);
    if (id == "fig6") return figure_fig6(cfg);
    if (id == "fig7") return figure_fig7(cfg);
    return figure_fig8(cfg);
}

} // namespace relaysim::cli
