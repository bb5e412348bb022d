#include "relaysim/h4qr_sim.hpp"
#include "relaysim/parallel.hpp"
#include "relaysim/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace relaysim::rates {

namespace {

// Stored pairs in one segment, tracked by age in clocks (0 = created this
// clock, incremented at each clock boundary). n is small, so a flat vector
// kept sorted oldest-first is fine.
struct Segment {
    std::vector<int> ages;

    int expire(long tau_clocks) {
        const auto cut = std::partition_point(
            ages.begin(), ages.end(), [&](int a) { return a > tau_clocks; });
        const int n = (int)(cut - ages.begin());
        ages.erase(ages.begin(), cut);
        return n;
    }
};

struct TrialStats {
    double clocks = std::numeric_limits<double>::quiet_NaN();
    long swaps = 0;
    long expiries = 0;
};

} // namespace

SimResult simulate(const SimConfig& cfg) {
    const RepeaterParams& p = cfg.params;
    const double clock = p.length_m() / p.signal_speed;
    const long tau_clocks =
        std::isinf(p.tau_s) ? std::numeric_limits<long>::max() / 2
                            : (long)std::floor(p.tau_s / clock);
    const double budget = p.rate_hz * clock; // dependent-mode budget per clock
    const double swap_p = p1(p);

    // Heralding probability per free independent mode when f modes share the
    // per-clock source budget.
    std::vector<double> p_gen(p.n + 1, 0.0);
    for (int f = 1; f <= p.n; ++f)
        p_gen[f] = pm(p, std::min(budget / f, double(p.m)), p.fiber_constraint);

    std::vector<TrialStats> stats((std::size_t)cfg.trials);
    parallel_for((std::size_t)cfg.trials, [&](std::size_t t) {
        Rng rng(cfg.seed, t);
        TrialStats& st = stats[t];
        Segment seg[2];
        seg[0].ages.reserve(p.n);
        seg[1].ages.reserve(p.n);
        for (double k = 0.0; k < cfg.max_clocks; k += 1.0) {
            for (auto& s : seg) {
                st.expiries += s.expire(tau_clocks);
                const int free = p.n - (int)s.ages.size();
                for (int i = 0; i < free; ++i)
                    if (rng.bernoulli(p_gen[free])) s.ages.push_back(0);
            }
            if (!seg[0].ages.empty() && !seg[1].ages.empty()) {
                // One swap attempt per clock, consuming the oldest pair on
                // each side whatever the outcome.
                ++st.swaps;
                const bool ok = rng.bernoulli(swap_p);
                seg[0].ages.erase(seg[0].ages.begin());
                seg[1].ages.erase(seg[1].ages.begin());
                if (ok) {
                    // Elapsed clocks plus the final heralding round trip.
                    st.clocks = k + 2.0;
                    return;
                }
            }
            for (auto& s : seg)
                for (int& a : s.ages) ++a;
        }
    }, (unsigned)std::max(0, cfg.threads));

    SimResult r;
    r.clock = clock;
    r.trials = cfg.trials;
    double sum = 0.0, sum2 = 0.0;
    int done = 0;
    for (const TrialStats& st : stats) {
        r.swap_attempts += st.swaps;
        r.expiry_events += st.expiries;
        if (std::isnan(st.clocks)) {
            ++r.timeouts;
            continue;
        }
        sum += st.clocks;
        sum2 += st.clocks * st.clocks;
        ++done;
    }
    if (done > 0) {
        r.mean_clocks = sum / done;
        r.mean_s = r.mean_clocks * clock;
        if (done > 1) {
            const double var = (sum2 - sum * sum / done) / (done - 1);
            r.stderr_s = std::sqrt(std::max(var, 0.0) / done) * clock;
        }
    }
    return r;
}

double exact_mean_n1(const RepeaterParams& p, double p_swap) {
    const double clock = p.length_m() / p.signal_speed;
    const double budget = p.rate_hz * clock;
    const double pg = pm(p, std::min(budget, double(p.m)), p.fiber_constraint);
    const double q = 1.0 - pg;
    long tau_clocks = std::isinf(p.tau_s)
                          ? std::numeric_limits<long>::max() / 2
                          : (long)std::floor(p.tau_s / clock);
    // The age recurrence contracts geometrically with ratio q; beyond the
    // convergence horizon older age states share the limiting value.
    const long horizon = (long)std::ceil(-45.0 / std::log1p(-pg)) + 4;
    tau_clocks = std::min(tau_clocks, horizon);
    // V(state) = expected reported clocks remaining from the start of a clock
    // (success in the current clock contributes 2: this clock plus the final
    // round trip). Single-pair states V_a = c_a + d_a * V_empty, with age
    // tau_clocks + 1 expiring into the empty state.
    double c = 0.0, d = 1.0;
    for (long a = tau_clocks; a >= 1; --a) {
        c = pg * (1.0 + p_swap) + q + q * c;
        d = pg * (1.0 - p_swap) + q * d;
    }
    const double num = pg * pg * (1.0 + p_swap) + 2.0 * pg * q * (1.0 + c) + q * q;
    const double den = 1.0 - pg * pg * (1.0 - p_swap) - 2.0 * pg * q * d - q * q;
    return clock * num / den;
}

} // namespace relaysim::rates
