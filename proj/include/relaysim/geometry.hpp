#pragma once

#include "relaysim/constants.hpp"

namespace relaysim::geo {

struct EarthModel {
    double radius_km = kEarthRadiusKm;
};

enum class PathKind { Uplink, Downlink, Horizontal };

// One free-space hop. Lengths in km; angles in radians.
struct PathGeometry {
    PathKind kind = PathKind::Uplink;
    double length_km = 0.0;    // physical path length L0
    double platform_alt_km = 0.0; // H
    double ground_alt_km = 0.0;   // h0 (vertical paths)
    double zenith_rad = 0.0;      // theta_z (vertical paths)
    double arc_km = 0.0;          // ground arc z0 (horizontal paths)
    double subtend_rad = 0.0;     // Earth-center angle (horizontal paths)
    double min_alt_km = 0.0;      // altitude of chord midpoint (horizontal paths)

    // Altitude above the surface at path coordinate x (km from the start of
    // the hop; vertical paths are parameterized from the ground end).
    double altitude_km(double x_km) const;

    // Normalized distance parameter used by the turbulence weightings:
    // downlink (h-h0)/(H-h0), uplink its complement, horizontal 1 - x/L.
    double xi_at_altitude(double h_km) const;
    double xi_at(double x_km) const;

    bool vertical() const { return kind != PathKind::Horizontal; }
};

// Ground-to-platform (or platform-to-ground) slant path at zenith angle
// theta_z. length = (H - h0) * sec(theta_z).
PathGeometry slant_path(double platform_alt_km, double ground_alt_km,
                        double zenith_rad, PathKind kind);

// Platform-to-platform chord between two platforms at altitude H whose ground
// tracks are z0 apart along a great circle. Throws ObstructedPath if the chord
// midpoint dips below the surface.
PathGeometry horizontal_path(double arc_km, double platform_alt_km,
                             EarthModel earth = {});

// Largest ground arc between platforms at altitude H with an unobstructed
// chord (midpoint altitude exactly zero).
double max_unobstructed_arc_km(double platform_alt_km, EarthModel earth = {});

} // namespace relaysim::geo
