#pragma once

#include "relaysim/coupling.hpp"

#include <cstdint>
#include <vector>

namespace relaysim::chain {

enum class Platform { Balloon, Satellite };
enum class WaistPolicy { Optimized, MidPath, TxWaist };

struct ChainConfig {
    Platform platform = Platform::Balloon;
    double ground_distance_km = 10000.0;
    int relay_count = 92;        // number of platforms N (hops = N + 1)
    double platform_alt_km = 24.0;
    double ground_alt_km = 0.002;
    double wavelength_m = 1537e-9;
    double eta_t = 0.98, eta_r = 0.98;
    // Telescope diameters, meters.
    double Dt_up = 0.2, Dr_up = 0.6;
    double Dt_hor = 0.6, Dr_hor = 0.6;
    double Dt_down = 0.2, Dr_down = 0.6;
    double wind_mps = 10.0; // uncompensated platform drift (pointing)
    WaistPolicy policy = WaistPolicy::Optimized;
    coupling::AOConfig ao;
    atmo::Cn2Profile cn2 = atmo::Cn2Profile::hv57();
    atmo::AttenuationProfile atten = atmo::AttenuationProfile::builtin_1537nm();
    bool horizontal_vacuum = false; // crosslinks above the atmosphere

    static ChainConfig balloon_defaults();
    static ChainConfig satellite_defaults();
};

// One evaluated (waist-optimized) hop.
struct HopResult {
    geo::PathGeometry path;
    beam::BeamState bs;
    beam::SpotSizes spots;
    double d_star = 0.0;     // chosen waist distance [m]
    double eta_optics = 0.0; // eta_t * eta_r
    double eta_atm = 1.0;
    double eta_col = 0.0;
    double r0 = 0.0;
    coupling::Scintillation scint;
    coupling::HopAberration aberr;

    double eta_hop() const { return eta_optics * eta_atm * eta_col; }
};

enum class HopRole { Up, Horizontal, Down };

// Evaluate a single hop under the config's waist policy.
HopResult evaluate_hop(const ChainConfig& cfg, const geo::PathGeometry& path, HopRole role);

struct ChannelBudget {
    int relay_count = 0;
    double hop_arc_km = 0.0;
    HopResult up, horizontal, down;
    double eta_ao = 1.0;   // cascaded single-mode coupling
    double eta_s = 1.0;    // chain scintillation factor
    double eta_smf = 0.0;  // eta0 * eta_ao * eta_s
    double total = 0.0;
    double total_db = 0.0;
};

ChannelBudget chain_budget(const ChainConfig& cfg);

struct EnvelopePoint {
    int relay_count = 0;
    bool feasible = false;
    double total_db = 0.0;
    double hop_arc_km = 0.0;
};

struct EnvelopeResult {
    std::vector<EnvelopePoint> points;
    ChannelBudget best;
    int best_relay_count = 0;
};

// Scan the relay count from the geometric minimum to ceil(L/50 km) platforms
// (bounds overridable) and return the best chain. Throws EmptyFeasibleSet.
EnvelopeResult optimize_relay_count(const ChainConfig& cfg, int n_min = 0, int n_max = 0);

struct JitterSpec {
    double endpoint_km = 5.0;  // +/- endpoint balloon drift, each axis
    double relay_frac = 0.2;   // relay drift as a fraction of the hop arc
    int trials = 200;
    std::uint64_t seed = 1;
};

struct JitterResult {
    double mean_db = 0.0; // mean over trials of total chain efficiency in dB
    double std_db = 0.0;
    double ideal_db = 0.0;
    int trials = 0;
    int failures = 0; // obstructed / infeasible trials
    std::vector<double> samples_db;
};

JitterResult jitter_monte_carlo(const ChainConfig& cfg, const JitterSpec& spec);

} // namespace relaysim::chain
