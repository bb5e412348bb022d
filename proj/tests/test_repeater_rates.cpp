#include "relaysim/repeater_rates.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace relaysim;
using namespace relaysim::rates;

namespace {

RepeaterParams defaults() { return RepeaterParams{}; }

} // namespace

TEST_CASE("elementary probabilities") {
    const auto p = defaults();
    // 1/2 * 0.8^2 * 0.9^2
    CHECK(p1(p) == doctest::Approx(0.2592).epsilon(1e-12));
    // eta_ch * eta_m * rho^2 * (eta_d^2/2)^2 with eta_ch = 1
    CHECK(p_single(p) == doctest::Approx(3.2805e-4).epsilon(1e-12));
    auto q = p;
    q.eta_ch = 0.01;
    CHECK(p_single(q) == doctest::Approx(3.2805e-6).epsilon(1e-12));
}

TEST_CASE("multiplexed heralding probability and the fiber cap") {
    const auto p = defaults();
    // oracle: 1 - (1 - p_single)^1000 without the cap
    CHECK(pm(p, 1000.0, false) == doctest::Approx(0.2797117646252101).epsilon(1e-10));
    // oracle: (eta_d^2/2) eta_m [1 - (1 - (eta_d^2/2) rho^2 e^{-alpha Lf})^1000]
    // binds at eta_ch = 1: local fibers saturate before free space does
    CHECK(pm(p) == doctest::Approx(0.097797545651172).epsilon(1e-10));
    // a weak channel is not fiber-limited
    auto weak = p;
    weak.eta_ch = 1e-3;
    CHECK(pm(weak) == doctest::Approx(pm(weak, 1000.0, false)).epsilon(1e-12));
    // monotone in the number of modes, linear for tiny p
    CHECK(pm(weak, 10.0, true) < pm(weak, 100.0, true));
    auto tiny = p;
    tiny.eta_ch = 1e-9;
    CHECK(pm(tiny, 100.0, false) ==
          doctest::Approx(100.0 * p_single(tiny)).epsilon(1e-6));
}

TEST_CASE("clock and regime") {
    auto p = defaults();
    p.distance_km = 3000.0;
    // R L / c = 1e6 * 3e6 m / c ~ 1.0007e4 >= n m = 1e4
    CHECK(long_distance_regime(p));
    CHECK(clock_s(p) == doctest::Approx(p.length_m() / kSpeedOfLight).epsilon(1e-12));
    p.distance_km = 500.0;
    CHECK_FALSE(long_distance_regime(p));
    CHECK(clock_s(p) == doctest::Approx(double(p.n) * p.m / p.rate_hz).epsilon(1e-12));
}

TEST_CASE("transition matrix is column-stochastic and tridiagonal") {
    for (double pmv : {1e-4, 0.05, 0.3, 0.9}) {
        const auto t = transition_matrix(7, pmv);
        for (int j = 0; j <= 7; ++j) {
            double col = 0.0;
            for (int i = 0; i <= 7; ++i) {
                CHECK(t.at(i, j) >= 0.0);
                if (std::abs(i - j) > 1) CHECK(t.at(i, j) == 0.0);
                col += t.at(i, j);
            }
            CHECK(col == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("single-event limit of the transition matrix") {
    // as p -> 0 at most one heralding or swap happens per clock:
    // from eps, up-rate (n-eps) p (new pair on the deficient side triggers a
    // swap), down-rate n p (pair on the full side), scaled by the k-mode
    // exposure split n/k and (n-eps)/k of the move probability k p
    const int n = 5;
    const double p = 1e-7;
    const auto t = transition_matrix(n, p);
    for (int eps = 1; eps < n; ++eps) {
        CHECK(t.at(eps - 1, eps) == doctest::Approx(n * p).epsilon(1e-4));
        CHECK(t.at(eps + 1, eps) == doctest::Approx((n - eps) * p).epsilon(1e-4));
    }
    CHECK(t.at(1, 0) == doctest::Approx(2.0 * n * p).epsilon(1e-4));
}

TEST_CASE("stationary distribution satisfies T P = P") {
    for (double pmv : {1e-3, 0.097797545651172, 0.4}) {
        const auto t = transition_matrix(10, pmv);
        const auto P = stationary(t);
        REQUIRE(P.size() == 11);
        double sum = 0.0;
        for (double v : P) {
            CHECK(v >= 0.0);
            sum += v;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        for (int i = 0; i <= 10; ++i) {
            double row = 0.0;
            for (int j = 0; j <= 10; ++j) row += t.at(i, j) * P[j];
            CHECK(row == doctest::Approx(P[i]).epsilon(1e-9));
        }
    }
}

TEST_CASE("n = 1 residual chain solves by hand") {
    // 2-state chain with T(1|0) = 1 - (1-p)^2 and T(0|1) = p:
    // detailed balance gives P(1)/P(0) = 2 - p.
    for (double p : {0.05, 0.6, 1.0 - 1e-12}) {
        const auto P = stationary(transition_matrix(1, p));
        CHECK(P[1] / P[0] == doctest::Approx(2.0 - p).epsilon(1e-9));
    }
}

TEST_CASE("markov and collins times against the oracle") {
    auto p = defaults();
    p.eta_ch = 0.01;
    p.distance_km = 3000.0;
    p.tau_s = 1.0;
    // oracle: independent evaluation of both stationary-chain expressions
    CHECK(markov_time(p) == doctest::Approx(1.3394457506738595).epsilon(1e-9));
    CHECK(collins_time(p) == doctest::Approx(1.5402731053655112).epsilon(1e-9));
    // short-distance form
    auto s = p;
    s.eta_ch = 0.05;
    s.distance_km = 500.0;
    CHECK(markov_time(s) == doctest::Approx(0.2477429293161125).epsilon(1e-9));
    CHECK(collins_time(s) == doctest::Approx(0.32843024096622264).epsilon(1e-9));
}

TEST_CASE("lower bound below upper bound, and analytic_times consistency") {
    auto p = defaults();
    p.tau_s = 1.0;
    for (double L : {1000.0, 3000.0, 10000.0, 20000.0}) {
        for (double e : {1e-1, 1e-2, 1e-3}) {
            p.distance_km = L;
            p.eta_ch = e;
            const auto r = analytic_times(p);
            CHECK(r.markov_s == doctest::Approx(markov_time(p)).epsilon(1e-12));
            CHECK(r.collins_s == doctest::Approx(collins_time(p)).epsilon(1e-12));
            CHECK(r.markov_s < r.collins_s);
            CHECK(r.p1 == doctest::Approx(0.2592));
            CHECK(r.collins_np_valid == (p.n * r.p_m <= 0.1));
        }
    }
}

TEST_CASE("short- and long-distance forms join continuously") {
    auto p = defaults();
    p.eta_ch = 0.01;
    p.tau_s = 1.0;
    const double boundary = double(p.n) * p.m * kSpeedOfLight / p.rate_hz / 1000.0;
    p.distance_km = boundary * 0.999;
    const double below = markov_time(p);
    p.distance_km = boundary * 1.001;
    const double above = markov_time(p);
    CHECK(std::abs(above - below) / above < 0.05);
    // oracle values either side of R L / c = n m
    CHECK(below == doctest::Approx(1.3382385559437555).epsilon(1e-9));
    CHECK(above == doctest::Approx(1.3398576322870788).epsilon(1e-9));
}

TEST_CASE("memory cutoff only hurts") {
    auto p = defaults();
    p.eta_ch = 0.01;
    p.distance_km = 3000.0;
    p.tau_s = std::numeric_limits<double>::infinity();
    const double inf = collins_time(p);
    p.tau_s = 1.0;
    const double t1 = collins_time(p);
    p.tau_s = 0.05;
    const double t005 = collins_time(p);
    CHECK(inf <= t1 + 1e-12);
    CHECK(t1 < t005);
    // a lifetime of many clocks is indistinguishable from infinite
    p.tau_s = 1e6;
    CHECK(collins_time(p) == doctest::Approx(inf).epsilon(1e-9));
}

TEST_CASE("n = 1 collins matches the single-mode closed form") {
    auto p = defaults();
    p.n = 1;
    p.m = 1;
    p.fiber_constraint = false;
    p.tau_s = std::numeric_limits<double>::infinity();
    p.rate_hz = 1e9; // keep clock = L/c
    for (double e : {1.0, 0.1, 0.01}) {
        p.eta_ch = e;
        const double pv = pm(p);
        // T = (L/c) / (p P1 <f_1>), <f_1> = (2-p)/(3-2p); the two derivations
        // agree to O(p), so the tolerance scales with p
        const double expect =
            p.length_m() / kSpeedOfLight * (3.0 - 2.0 * pv) / (pv * (2.0 - pv) * p1(p));
        CHECK(collins_time(p) == doctest::Approx(expect).epsilon(pv));
    }
}

TEST_CASE("mode-efficiency factors") {
    const double p = 0.01;
    // oracle closed forms
    CHECK(mode_efficiency(ModeKind::Single, 1, p) ==
          doctest::Approx((2.0 - p) / (3.0 - 2.0 * p)).epsilon(1e-12));
    CHECK(mode_efficiency(ModeKind::Dependent, 10, p) ==
          doctest::Approx(0.6483031421546293).epsilon(1e-8));
    // kappa = 1 of either family reduces to the single-mode factor
    CHECK(mode_efficiency(ModeKind::Dependent, 1, p) ==
          doctest::Approx(mode_efficiency(ModeKind::Single, 1, p)).epsilon(1e-12));
    // the stationary-chain estimator agrees with <f_1> to O(p):
    // (4-p)/(6-2p) vs (2-p)/(3-2p), both 2/3 + O(p)
    CHECK(mode_efficiency(ModeKind::Independent, 1, p) ==
          doctest::Approx((4.0 - p) / (6.0 - 2.0 * p)).epsilon(1e-12));
    CHECK(mode_efficiency(ModeKind::Independent, 1, p) ==
          doctest::Approx(mode_efficiency(ModeKind::Single, 1, p)).epsilon(p));
    // limits of <f_1>: 2/3 for rare heralding, 1 for deterministic
    CHECK(mode_efficiency(ModeKind::Single, 1, 1e-9) == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
    CHECK(mode_efficiency(ModeKind::Single, 1, 1.0) == doctest::Approx(1.0));
    // independent modes always beat dependent ones
    for (int kappa : {2, 10, 100}) {
        const double fi = mode_efficiency(ModeKind::Independent, kappa, p);
        const double fd = mode_efficiency(ModeKind::Dependent, kappa, p);
        CHECK(fi > fd);
        CHECK(fi <= 1.0);
        CHECK(fd > 0.0);
    }
}
