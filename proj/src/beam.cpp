#include "relaysim/beam.hpp"
#include "relaysim/errors.hpp"
#include "relaysim/quadrature.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace relaysim::beam {

BeamState derive_beam(double W0_m, double F0_m, double L0_m, double wavelength_m) {
    BeamState b;
    b.W0 = W0_m;
    b.F0 = F0_m;
    b.L0 = L0_m;
    b.wavelength = wavelength_m;
    b.k = 2.0 * kPi / wavelength_m;
    b.Theta0 = std::isinf(F0_m) ? 1.0 : 1.0 - L0_m / F0_m;
    b.Lambda0 = 2.0 * L0_m / (b.k * W0_m * W0_m);
    const double denom = b.Theta0 * b.Theta0 + b.Lambda0 * b.Lambda0;
    b.Theta = b.Theta0 / denom;
    b.Lambda = b.Lambda0 / denom;
    b.W_diff = W0_m * std::sqrt(denom);
    return b;
}

double waist_distance(double W0_m, double F0_m, double wavelength_m) {
    if (std::isinf(F0_m)) return 0.0;
    const double a = F0_m * wavelength_m / (kPi * W0_m * W0_m);
    return F0_m / (1.0 + a * a);
}

double max_waist_distance(double W0_m, double wavelength_m) {
    return kPi * W0_m * W0_m / (2.0 * wavelength_m);
}

double curvature_for_waist(double W0_m, double d_m, double wavelength_m) {
    if (d_m == 0.0) return std::numeric_limits<double>::infinity();
    const double dmax = max_waist_distance(W0_m, wavelength_m);
    if (d_m > dmax)
        throw UnreachableWaist("waist distance " + std::to_string(d_m) +
                               " m exceeds reachable maximum " + std::to_string(dmax) + " m");
    // a^2 d F0^2 - F0 + d = 0 with a = lambda/(pi W0^2); smaller root.
    const double a = wavelength_m / (kPi * W0_m * W0_m);
    const double disc = std::sqrt(std::max(0.0, 1.0 - 4.0 * a * a * d_m * d_m));
    return (1.0 - disc) / (2.0 * a * a * d_m);
}

namespace {

// Beam-wander variance. Vertical hops integrate Cn2 over altitude; horizontal
// hops use the constant mid-chord Cn2 and integrate over the normalized
// coordinate.
double wander_rc2(const BeamState& bs, const geo::PathGeometry& path,
                  const atmo::Cn2Profile& cn2, double rytov2) {
    if (cn2.is_zero()) return 0.0;
    const double t0 = bs.Theta0;
    const double tb0 = bs.ThetaBar0();
    const double l0 = bs.Lambda0;
    const double sr125 = std::pow(rytov2, 6.0 / 5.0); // sigma_R^{12/5}
    auto kernel = [&](double xi) {
        const double u = t0 + tb0 * xi;
        const double b = u * u + 1.63 * sr125 * l0 * std::pow(1.0 - xi, 16.0 / 5.0);
        return std::pow(b, -1.0 / 6.0);
    };
    if (path.vertical()) {
        const double h0 = path.ground_alt_km * 1000.0;
        const double H = path.platform_alt_km * 1000.0;
        const double span = H - h0;
        const double sec = 1.0 / std::cos(path.zenith_rad);
        const double integral = integrate(
            [&](double h) {
                const double xi = path.xi_at_altitude(h / 1000.0);
                return cn2.at_km(h / 1000.0) * xi * xi * kernel(xi);
            },
            h0, H);
        return 7.25 * span * span * sec * sec * sec * std::pow(bs.W0, -1.0 / 3.0) * integral;
    }
    const double cn2v = cn2.at_km(path.min_alt_km);
    const double L = path.length_km * 1000.0;
    const double integral =
        integrate([&](double xi) { return xi * xi * kernel(xi); }, 0.0, 1.0);
    return 7.25 * cn2v * L * L * L * std::pow(bs.W0, -1.0 / 3.0) * integral;
}

} // namespace

SpotSizes spot_sizes(const BeamState& bs, const geo::PathGeometry& path,
                     const atmo::Cn2Profile& cn2, double wind_mps) {
    SpotSizes s;
    if (cn2.is_zero()) {
        s.W_lt = s.W_st = bs.W_diff;
    } else if (path.vertical()) {
        const auto m = atmo::vertical_moments(path, cn2, bs.k);
        s.rytov2 = m.rytov2;
        const double span = (path.platform_alt_km - path.ground_alt_km) * 1000.0;
        const double sec = 1.0 / std::cos(path.zenith_rad);
        s.T = 4.35 * m.mu2 * std::pow(bs.Lambda, 5.0 / 6.0) * std::pow(bs.k, 7.0 / 6.0) *
              std::pow(span, 5.0 / 6.0) * std::pow(sec, 11.0 / 6.0);
    } else {
        s.rytov2 = atmo::rytov2_horizontal(path, cn2, bs.k);
        s.T = 1.63 * std::pow(s.rytov2, 6.0 / 5.0) * bs.Lambda;
    }
    if (!cn2.is_zero()) {
        s.W_lt = bs.W_diff * std::sqrt(1.0 + s.T);
        s.rc2 = wander_rc2(bs, path, cn2, s.rytov2);
        const double st2 = s.W_lt * s.W_lt - s.rc2;
        if (st2 <= 0.0)
            throw NegativeShortTerm("beam-wander variance exceeds long-term spot size");
        s.W_st = std::sqrt(st2);
    }
    const double drift = wind_mps * (path.length_km * 1000.0) / kSpeedOfLight;
    s.W_eff = std::sqrt(s.W_st * s.W_st + drift * drift);
    return s;
}

double collection_efficiency(double aperture_m, double spot_radius_m) {
    const double r = aperture_m * aperture_m / (2.0 * spot_radius_m * spot_radius_m);
    return -std::expm1(-r);
}

} // namespace relaysim::beam
