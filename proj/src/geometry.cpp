#include "relaysim/geometry.hpp"
#include "relaysim/errors.hpp"

#include <cmath>
#include <string>

namespace relaysim::geo {

double PathGeometry::altitude_km(double x_km) const {
    if (vertical()) {
        return ground_alt_km + x_km * std::cos(zenith_rad);
    }
    // Altitude along the chord: law of cosines from the Earth's center. The
    // chord leaves a platform at radius R+H with interior angle theta_L
    // against the local radius vector, cos(theta_L) = L/(2(R+H)).
    const double rp = kEarthRadiusKm + platform_alt_km; // both ends at H
    const double cos_tl = length_km / (2.0 * rp);
    const double r2 = rp * rp + x_km * x_km - 2.0 * rp * x_km * cos_tl;
    return std::sqrt(r2) - kEarthRadiusKm;
}

double PathGeometry::xi_at_altitude(double h_km) const {
    const double span = platform_alt_km - ground_alt_km;
    const double t = (h_km - ground_alt_km) / span;
    return kind == PathKind::Downlink ? t : 1.0 - t;
}

double PathGeometry::xi_at(double x_km) const {
    if (vertical()) return xi_at_altitude(altitude_km(x_km));
    return 1.0 - x_km / length_km;
}

PathGeometry slant_path(double platform_alt_km, double ground_alt_km,
                        double zenith_rad, PathKind kind) {
    if (platform_alt_km <= ground_alt_km)
        throw ObstructedPath("slant path: platform altitude must exceed ground altitude");
    PathGeometry p;
    p.kind = kind;
    p.platform_alt_km = platform_alt_km;
    p.ground_alt_km = ground_alt_km;
    p.zenith_rad = zenith_rad;
    p.length_km = (platform_alt_km - ground_alt_km) / std::cos(zenith_rad);
    return p;
}

PathGeometry horizontal_path(double arc_km, double platform_alt_km, EarthModel earth) {
    PathGeometry p;
    p.kind = PathKind::Horizontal;
    p.platform_alt_km = platform_alt_km;
    p.arc_km = arc_km;
    const double rp = earth.radius_km + platform_alt_km;
    p.subtend_rad = arc_km / earth.radius_km;
    p.length_km = 2.0 * rp * std::sin(0.5 * p.subtend_rad);
    p.min_alt_km = rp * std::cos(0.5 * p.subtend_rad) - earth.radius_km;
    if (p.min_alt_km < 0.0)
        throw ObstructedPath("horizontal path: chord dips below the surface (arc " +
                             std::to_string(arc_km) + " km at altitude " +
                             std::to_string(platform_alt_km) + " km)");
    return p;
}

double max_unobstructed_arc_km(double platform_alt_km, EarthModel earth) {
    const double r = earth.radius_km;
    return 2.0 * r * std::acos(r / (r + platform_alt_km));
}

} // namespace relaysim::geo
