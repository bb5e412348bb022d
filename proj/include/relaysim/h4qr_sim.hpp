#pragma once

#include "relaysim/repeater_rates.hpp"

#include <cstdint>
#include <vector>

namespace relaysim::rates {

// Time-slotted Monte Carlo of the two-segment multiplexed repeater.  Each
// clock (L/c) every free independent mode attempts heralding, stored pairs
// older than the memory lifetime expire, and matched pairs across the two
// segments are consumed by a swap attempt succeeding with probability P1.
struct SimConfig {
    RepeaterParams params;
    int trials = 10000;
    std::uint64_t seed = 1;
    int threads = 0;             // 0 = hardware concurrency
    double max_clocks = 1e9;     // per-trial safety cap
};

struct SimResult {
    double mean_s = 0.0;
    double stderr_s = 0.0;
    double mean_clocks = 0.0;
    int trials = 0;
    int timeouts = 0;            // trials that hit max_clocks
    long swap_attempts = 0;
    long expiry_events = 0;
    double clock = 0.0;
};

SimResult simulate(const SimConfig& cfg);

// Exact mean distribution time (in seconds) for n = 1 by absorbing-chain
// enumeration over the joint age state; used to validate the simulator.
double exact_mean_n1(const RepeaterParams& p, double p_swap);

} // namespace relaysim::rates
