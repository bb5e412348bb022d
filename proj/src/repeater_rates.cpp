#include "relaysim/repeater_rates.hpp"
#include "relaysim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace relaysim::rates {

namespace {

double fiber_alpha_np_per_km(const RepeaterParams& p) {
    return p.fiber_db_per_km * std::log(10.0) / 10.0;
}

// 1 - (1 - x)^modes, stable for tiny x; x may sit a rounding error above 1.
double one_minus_pow(double x, double modes) {
    if (x >= 1.0) return 1.0;
    return -std::expm1(modes * std::log1p(-x));
}

} // namespace

double p1(const RepeaterParams& p) {
    return 0.5 * p.eta_m * p.eta_m * p.eta_d * p.eta_d;
}

double p_single(const RepeaterParams& p) {
    const double half_d2 = 0.5 * p.eta_d * p.eta_d;
    return p.eta_ch * p.eta_m * p.rho * p.rho * half_d2 * half_d2;
}

double pm(const RepeaterParams& p, double modes, bool with_fiber_constraint) {
    const double free_space = one_minus_pow(p_single(p), modes);
    if (!with_fiber_constraint) return free_space;
    const double half_d2 = 0.5 * p.eta_d * p.eta_d;
    const double p_fiber =
        half_d2 * p.rho * p.rho * std::exp(-fiber_alpha_np_per_km(p) * p.fiber_km);
    const double cap = half_d2 * p.eta_m * one_minus_pow(p_fiber, modes);
    return std::min(free_space, cap);
}

bool long_distance_regime(const RepeaterParams& p) {
    return p.rate_hz * p.length_m() / p.signal_speed >= double(p.n) * p.m;
}

double clock_s(const RepeaterParams& p) {
    return std::max(double(p.n) * p.m / p.rate_hz, p.length_m() / p.signal_speed);
}

namespace {

// Dependent-mode budget for a segment whose residual count is eps.
double modes_for_residual(const RepeaterParams& p, int eps) {
    const double budget = p.rate_hz * p.length_m() / p.signal_speed / (p.n - eps);
    return std::min(budget, double(p.m));
}

double pm_eps(const RepeaterParams& p, int eps) {
    return pm(p, modes_for_residual(p, eps), p.fiber_constraint);
}

} // namespace

TransitionMatrix transition_matrix(int n, double p_m) {
    TransitionMatrix t;
    t.n = n;
    t.a.assign((n + 1) * (n + 1), 0.0);
    for (int j = 1; j <= n + 1; ++j) {
        const int k = 2 * n - j + 1; // free modes in state eps = j-1
        const double stay = std::pow(1.0 - p_m, k);
        if (j == 1) {
            t.at(0, 0) = std::pow(1.0 - p_m, 2 * n);
            t.at(1, 0) = 1.0 - t.at(0, 0);
            continue;
        }
        const double move = 1.0 - stay;
        t.at(j - 1, j - 1) = stay;
        t.at(j - 2, j - 1) = double(n) / k * move;
        if (j <= n) t.at(j, j - 1) = double(n - j + 1) / k * move;
    }
    return t;
}

TransitionMatrix transition_matrix_short(const RepeaterParams& p) {
    const int n = p.n;
    TransitionMatrix t;
    t.n = n;
    t.a.assign((n + 1) * (n + 1), 0.0);
    const double p0 = pm_eps(p, 0);
    for (int j = 1; j <= n + 1; ++j) {
        if (j == 1) {
            t.at(0, 0) = std::pow(1.0 - p0, 2 * n);
            t.at(1, 0) = 1.0 - t.at(0, 0);
            continue;
        }
        const double pe = pm_eps(p, j - 1);
        const double stay = std::pow(1.0 - p0, n) * std::pow(1.0 - pe, n - j + 1);
        const double move = 1.0 - stay;
        const double w_down = n * p0;
        const double w_up = double(n - j + 1) * pe;
        t.at(j - 1, j - 1) = stay;
        t.at(j - 2, j - 1) = w_down / (w_down + w_up) * move;
        if (j <= n) t.at(j, j - 1) = w_up / (w_down + w_up) * move;
    }
    return t;
}

std::vector<double> stationary(const TransitionMatrix& t) {
    const int n = t.n;
    // Birth-death detailed balance: P(e+1) up(e) ... backwards from the
    // tridiagonal structure.
    std::vector<double> p(n + 1, 0.0);
    p[0] = 1.0;
    for (int e = 0; e < n; ++e) {
        const double up = t.at(e + 1, e);     // eps -> eps+1
        const double down = t.at(e, e + 1);   // eps+1 -> eps
        p[e + 1] = down > 0.0 ? p[e] * up / down : 0.0;
    }
    double sum = 0.0;
    for (double v : p) sum += v;
    for (double& v : p) v /= sum;

    // Cross-check: solve (T - I) x = 0 with a normalization row via dense
    // Gaussian elimination.
    const int dim = n + 1;
    std::vector<double> a(dim * dim, 0.0), b(dim, 0.0);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            a[i * dim + j] = t.at(i, j) - (i == j ? 1.0 : 0.0);
    for (int j = 0; j < dim; ++j) a[(dim - 1) * dim + j] = 1.0;
    b[dim - 1] = 1.0;
    for (int c = 0; c < dim; ++c) {
        int piv = c;
        for (int r = c + 1; r < dim; ++r)
            if (std::fabs(a[r * dim + c]) > std::fabs(a[piv * dim + c])) piv = r;
        for (int j = 0; j < dim; ++j) std::swap(a[c * dim + j], a[piv * dim + j]);
        std::swap(b[c], b[piv]);
        for (int r = 0; r < dim; ++r) {
            if (r == c || a[r * dim + c] == 0.0) continue;
            const double f = a[r * dim + c] / a[c * dim + c];
            for (int j = c; j < dim; ++j) a[r * dim + j] -= f * a[c * dim + j];
            b[r] -= f * b[c];
        }
    }
    double worst = 0.0;
    for (int i = 0; i < dim; ++i) {
        const double xi = b[i] / a[i * dim + i];
        worst = std::max(worst, std::fabs(xi - p[i]));
    }
    if (worst > 1e-9)
        throw std::runtime_error("stationary distribution cross-check failed");
    return p;
}

double markov_time(const RepeaterParams& p) {
    // The short-distance form with adaptive allocation reduces exactly to the
    // uniform-p long-distance expression when R L / c >= n m.
    const bool shortd = !long_distance_regime(p);
    const TransitionMatrix t =
        shortd ? transition_matrix_short(p) : transition_matrix(p.n, pm(p));
    const std::vector<double> dist = stationary(t);
    const double p0 = shortd ? pm_eps(p, 0) : pm(p);
    double sum = p.n * p0;
    for (int e = 0; e <= p.n; ++e) {
        const double pe = shortd ? pm_eps(p, e) : pm(p);
        sum += (p.n - e) * pe * dist[e];
    }
    return 2.0 * p.length_m() / (p.signal_speed * p1(p)) / sum;
}

double collins_time(const RepeaterParams& p) {
    const double clock = clock_s(p);
    const double pm_v = pm(p);
    const double lq = std::log1p(-pm_v); // ln q0
    const double n = p.n;
    double tau_c;
    if (std::isinf(p.tau_s)) {
        tau_c = 1e18;
    } else {
        tau_c = std::floor(p.tau_s / clock);
    }
    auto q = [&](double e) { return std::exp(e * lq); }; // q0^e
    const double qn = q(n);
    const double qt1 = q(n * (tau_c + 1));
    const double qt2 = q(n * (tau_c + 2));
    const double alpha = q(n - 1) * (1.0 - qn) *
                         (1.0 - q(2 * n - 1) + 2.0 * q(3 * n - 2) * (1.0 - q(tau_c * (2 * n - 1)))) /
                         ((1.0 - q(2 * n - 1)) * (1.0 + qn - 2.0 * qt1));
    const double f = p1(p) * (1.0 - qn) * (1.0 + qn - 2.0 * qt1) /
                     (1.0 + 2.0 * qn - q(2 * n) - 4.0 * qt1 + 2.0 * qt2 + alpha);
    return clock / f;
}

RateEstimate analytic_times(const RepeaterParams& p) {
    RateEstimate r;
    r.markov_s = markov_time(p);
    r.collins_s = collins_time(p);
    r.clock = clock_s(p);
    r.p_m = pm(p);
    r.p1 = p1(p);
    r.collins_np_valid = p.n * r.p_m <= 0.1;
    return r;
}

double mode_efficiency(ModeKind kind, int kappa, double p) {
    switch (kind) {
        case ModeKind::Single:
            return (2.0 - p) / (3.0 - 2.0 * p);
        case ModeKind::Dependent: {
            const double m = kappa;
            const double q = 1.0 - p;
            return one_minus_pow(p, 2.0 * m) / (m * p * (1.0 + 2.0 * std::pow(q, m)));
        }
        case ModeKind::Independent: {
            const double pm_v = one_minus_pow(p, 1.0); // = p, per independent mode
            const auto t = transition_matrix(kappa, pm_v);
            const auto dist = stationary(t);
            double s = 0.0;
            for (int e = 0; e <= kappa; ++e)
                s += (2.0 * kappa - e) / (2.0 * kappa) * dist[e];
            return s;
        }
    }
    return 0.0;
}

} // namespace relaysim::rates
