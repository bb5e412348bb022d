#pragma once

#include "relaysim/atmosphere.hpp"
#include "relaysim/geometry.hpp"

namespace relaysim::beam {

// Gaussian beam launched with radius W0 and phase-front radius of curvature F0
// (F0 = +inf for a collimated beam), observed at range L0. All meters.
struct BeamState {
    double W0 = 0.0;
    double F0 = 0.0;
    double L0 = 0.0;
    double wavelength = 0.0;
    double k = 0.0;

    double Theta0 = 0.0, Lambda0 = 0.0; // transmitter-plane parameters
    double Theta = 0.0, Lambda = 0.0;   // receiver-plane parameters
    double W_diff = 0.0;                // diffraction-only spot radius at L0

    double ThetaBar0() const { return 1.0 - Theta0; }
    double ThetaBar() const { return 1.0 - Theta; }
};

BeamState derive_beam(double W0_m, double F0_m, double L0_m, double wavelength_m);

// Distance from the transmitter to the beam waist for focal setting F0.
double waist_distance(double W0_m, double F0_m, double wavelength_m);

// Largest reachable waist distance, pi W0^2 / (2 lambda).
double max_waist_distance(double W0_m, double wavelength_m);

// Inverse of waist_distance: the smaller of the two focal settings that put
// the waist at distance d. Throws UnreachableWaist for d > max_waist_distance.
// d == 0 returns +inf (collimated).
double curvature_for_waist(double W0_m, double d_m, double wavelength_m);

struct SpotSizes {
    double T = 0.0;        // relative long-term turbulent broadening
    double rc2 = 0.0;      // beam-wander variance [m^2]
    double rytov2 = 0.0;   // path Rytov variance sigma_R^2
    double W_lt = 0.0;     // long-term spot radius [m]
    double W_st = 0.0;     // short-term (wander-removed) spot radius [m]
    double W_eff = 0.0;    // short-term + pointing-drift spot radius [m]
};

// Spot radii at the end of the hop. wind_mps models the uncompensated
// platform drift over one light-flight time (0 disables it). Throws
// NegativeShortTerm if the wander variance exceeds the long-term spot.
SpotSizes spot_sizes(const BeamState& bs, const geo::PathGeometry& path,
                     const atmo::Cn2Profile& cn2, double wind_mps);

// Fraction of a Gaussian spot of radius W_m collected by an aperture of
// diameter D_m: 1 - exp(-D^2 / (2 W^2)).
double collection_efficiency(double aperture_m, double spot_radius_m);

} // namespace relaysim::beam
