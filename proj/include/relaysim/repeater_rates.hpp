#pragma once

#include "relaysim/constants.hpp"

#include <vector>

namespace relaysim::rates {

// Two-segment multiplexed repeater between end servers a distance L apart,
// with a heralding station in the middle of each segment.
struct RepeaterParams {
    double distance_km = 3000.0; // end-to-end separation L
    double eta_ch = 1.0;   // free-space channel efficiency per segment
    double eta_m = 0.8;    // memory (storage + retrieval) efficiency
    double eta_d = 0.9;    // detector efficiency
    double rho = 0.05;     // source emission amplitude
    double rate_hz = 1e6;  // EPPS repetition rate R
    int m = 1000;          // dependent (temporal) modes per independent mode
    int n = 10;            // independent (spatial/spectral) modes per segment
    double tau_s = 1.0;    // memory lifetime (infinity() allowed)
    double fiber_km = 25.0;        // source-to-memory local fiber
    double fiber_db_per_km = 0.18;
    double signal_speed = kSpeedOfLight; // channel light speed
    bool fiber_constraint = true;        // cap p_m at the fiber-limited value

    double length_m() const { return distance_km * 1000.0; }
};

// Swap success probability 1/2 eta_m^2 eta_d^2.
double p1(const RepeaterParams& p);

// Single-pair heralding probability per dependent mode.
double p_single(const RepeaterParams& p);

// Heralding probability of an independent mode bundling `modes` dependent
// modes, optionally capped by the local-fiber bottleneck.
double pm(const RepeaterParams& p, double modes, bool with_fiber_constraint);
inline double pm(const RepeaterParams& p) { return pm(p, p.m, p.fiber_constraint); }

// True if the EPPS budget R L / c covers all n m dependent modes per clock.
bool long_distance_regime(const RepeaterParams& p);

// Operative clock period, max(n m / R, L / c).
double clock_s(const RepeaterParams& p);

// (n+1)x(n+1) column-stochastic transition matrix of the residual-entanglement
// birth-death chain; column j-1 = current residual count epsilon.
struct TransitionMatrix {
    int n = 0;
    std::vector<double> a; // row-major (n+1)^2
    double& at(int i, int j) { return a[i * (n + 1) + j]; }
    double at(int i, int j) const { return a[i * (n + 1) + j]; }
};

// Uniform heralding probability p_m (long-distance form).
TransitionMatrix transition_matrix(int n, double p_m);
// Short-distance form with residual-dependent mode allocation.
TransitionMatrix transition_matrix_short(const RepeaterParams& p);

// Stationary distribution: detailed-balance recurrence, cross-checked against
// a direct linear solve of (T - I) P = 0.
std::vector<double> stationary(const TransitionMatrix& t);

// Mean entanglement-distribution time from the stationary residual
// distribution (lower-bound model); applies the short-distance correction
// automatically when R L / c < n m.
double markov_time(const RepeaterParams& p);

// Memory-cutoff analytic estimate (upper-bound model).
double collins_time(const RepeaterParams& p);

struct RateEstimate {
    double markov_s = 0.0;
    double collins_s = 0.0;
    double clock = 0.0;
    double p_m = 0.0;
    double p1 = 0.0;
    bool collins_np_valid = true; // n p_m <= 0.1
};
RateEstimate analytic_times(const RepeaterParams& p);

// Mode-efficiency factors <f_kappa> (distributed rate = kappa p P1 <f_kappa>).
enum class ModeKind { Single, Dependent, Independent };
double mode_efficiency(ModeKind kind, int kappa, double p);

} // namespace relaysim::rates
