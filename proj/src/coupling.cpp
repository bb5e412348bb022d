#include "relaysim/coupling.hpp"
#include "relaysim/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace relaysim::coupling {

double fried_parameter(const geo::PathGeometry& path, const beam::BeamState& bs,
                       const atmo::Cn2Profile& cn2) {
    if (cn2.is_zero()) return std::numeric_limits<double>::infinity();
    const double k2 = bs.k * bs.k;
    const double lam116 = std::pow(bs.Lambda, 11.0 / 6.0);
    if (path.vertical()) {
        const auto m = atmo::vertical_moments(path, cn2, bs.k);
        const double m1 = atmo::mu1(path, cn2, bs);
        const double denom = 1.46 * k2 * (m1 + 0.622 * m.mu2 * lam116);
        if (denom <= 0.0) return std::numeric_limits<double>::infinity();
        return 2.1 * std::pow(std::cos(path.zenith_rad) / denom, 3.0 / 5.0);
    }
    const double cn2v = cn2.at_km(path.min_alt_km);
    if (cn2v <= 0.0) return std::numeric_limits<double>::infinity();
    const double L = path.length_km * 1000.0;
    const double t = bs.Theta;
    // (1 - t^{8/3})/(1 - t) -> 8/3 as t -> 1 (waist exactly at the receiver).
    const double a = std::abs(1.0 - t) < 1e-9
                         ? 8.0 / 3.0
                         : (t >= 0.0 ? (1.0 - std::pow(t, 8.0 / 3.0)) / (1.0 - t)
                                     : (1.0 + std::pow(-t, 8.0 / 3.0)) / (1.0 - t));
    return 2.1 * std::pow(8.0 / (3.0 * (a + 0.62 * lam116)), 3.0 / 5.0) *
           std::pow(1.46 * cn2v * k2 * L, -3.0 / 5.0);
}

namespace {

// 0.023 * Gamma(14/3) * pi^{8/3} / (2^{5/3} Gamma(17/6)^2) = 0.75857...
double zernike_norm() {
    static const double c = 0.023 * std::exp(std::lgamma(14.0 / 3.0)) *
                            std::pow(kPi, 8.0 / 3.0) /
                            (std::pow(2.0, 5.0 / 3.0) *
                             std::exp(2.0 * std::lgamma(17.0 / 6.0)));
    return c;
}

// Universal per-order coefficient of (D/r0)^{5/3}: variance of one mode of
// radial order n, with the normalization pulled out.
double order_coeff(int n) {
    return zernike_norm() * (n + 1.0) *
           std::exp(std::lgamma(n - 5.0 / 6.0) - std::lgamma(n + 23.0 / 6.0));
}

constexpr int kTailTable = 400;

// cumulative[n] = sum_{m > n} (m+1) * order_coeff(m), including the analytic
// remainder beyond the tabulated range.
const std::vector<double>& tail_table() {
    static const std::vector<double> tab = [] {
        std::vector<double> t(kTailTable + 1, 0.0);
        // Kolmogorov asymptote: (n+1) c_n ~ 0.7586 n^{-8/3}.
        double acc = 0.455 * std::pow(kTailTable + 0.5, -5.0 / 3.0);
        t[kTailTable] = acc;
        for (int n = kTailTable; n >= 1; --n) {
            acc += (n + 1.0) * order_coeff(n);
            t[n - 1] = acc;
        }
        return t;
    }();
    return tab;
}

} // namespace

std::vector<double> zernike_variances(double aperture_m, double r0_m, int max_order) {
    std::vector<double> v(std::max(max_order, 0), 0.0);
    if (!(r0_m > 0.0) || std::isinf(r0_m)) return v;
    const double d53 = std::pow(aperture_m / r0_m, 5.0 / 3.0);
    for (int n = 1; n <= max_order; ++n) v[n - 1] = order_coeff(n) * d53;
    return v;
}

double zernike_tail(double aperture_m, double r0_m, int max_order) {
    if (!(r0_m > 0.0) || std::isinf(r0_m)) return 0.0;
    const double d53 = std::pow(aperture_m / r0_m, 5.0 / 3.0);
    const auto& tab = tail_table();
    if (max_order >= kTailTable)
        return d53 * 0.455 * std::pow(max_order + 0.5, -5.0 / 3.0);
    return d53 * tab[std::max(max_order, 0)];
}

double mode_attenuation(const AOConfig& ao, int order, double aperture_m) {
    if (!ao.enabled || order > ao.corrected_orders) return 1.0;
    if (ao.model == AOModel::IdealCutoff) return 0.0;
    // Greenwood-type per-order cutoff frequency.
    const double f = 0.3 * (order + 1.0) * ao.wind_mps / aperture_m;
    const std::complex<double> iw(0.0, 2.0 * kPi * f);
    const std::complex<double> s = iw * ao.integration_s;
    // Pure integrator with gain K_I, loop delay, and zero-order hold.
    const std::complex<double> zoh = (1.0 - std::exp(-s)) / s;
    const std::complex<double> g = ao.gain / s * std::exp(-iw * ao.delay_s) * zoh;
    const double rej = std::norm(1.0 / (1.0 + g)); // |1 - closed loop|^2
    return std::clamp(rej, 0.0, 1.0);
}

double ao_chain_coupling(const std::vector<HopAberration>& hops) {
    const std::size_t H = hops.size();
    std::size_t orders = 0;
    for (const auto& h : hops) orders = std::max(orders, h.b2.size());
    double log_eta = 0.0;
    for (std::size_t n = 1; n <= orders; ++n) {
        // remaining rejection applied to hop i's order-n aberration: product
        // of gamma^2 of correctors at hops i..H-1.
        double g_tail = 1.0;
        std::vector<double> g(H, 1.0);
        for (std::size_t i = H; i-- > 0;) {
            const auto& gam = hops[i].gamma2;
            g_tail *= (n <= gam.size()) ? gam[n - 1] : 1.0;
            g[i] = g_tail;
        }
        for (std::size_t i = 0; i < H; ++i) {
            const auto& b2 = hops[i].b2;
            if (n > b2.size() || b2[n - 1] == 0.0) continue;
            log_eta += -(n + 1.0) / 2.0 * std::log1p(2.0 * g[i] * b2[n - 1]);
        }
    }
    // High-order tails sit above every corrector; variances are tiny there so
    // the log1p linearizes.
    for (const auto& h : hops) log_eta -= h.b2_tail;
    return std::exp(log_eta);
}

Scintillation scintillation(double rytov2, double wavenumber_per_m,
                            double aperture_m, double path_length_m) {
    Scintillation s;
    if (rytov2 <= 0.0) return s;
    const double b0 = 0.4065 * rytov2; // beta_0^2
    const double dg2 = 2.0 * aperture_m * aperture_m;
    const double d2 = wavenumber_per_m * dg2 / (4.0 * path_length_m);
    const double b125 = std::pow(b0, 6.0 / 5.0);
    const double t1 = 0.49 * b0 / std::pow(1.0 + 0.18 * d2 + 0.56 * b125, 7.0 / 6.0);
    const double t2 = 0.51 * b0 * std::pow(1.0 + 0.69 * b125, -5.0 / 6.0) /
                      (1.0 + 0.90 * d2 + 0.62 * d2 * b125);
    s.sigma_I2 = std::expm1(t1 + t2);
    s.eta_s = std::pow(1.0 + s.sigma_I2, -0.25);
    return s;
}

} // namespace relaysim::coupling
