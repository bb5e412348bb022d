#include "relaysim/geometry.hpp"
#include "relaysim/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace relaysim;
using namespace relaysim::geo;

TEST_CASE("slant path length is (H - h0) sec(theta_z)") {
    const auto p = slant_path(24.0, 0.002, 0.0, PathKind::Uplink);
    CHECK(p.length_km == doctest::Approx(23.998).epsilon(1e-14));
    const auto q = slant_path(500.0, 0.0, 60.0 * kPi / 180.0, PathKind::Downlink);
    CHECK(q.length_km == doctest::Approx(1000.0).epsilon(1e-12));
    CHECK_THROWS_AS(slant_path(1.0, 2.0, 0.0, PathKind::Uplink), ObstructedPath);
}

TEST_CASE("slant altitude parameterization starts at the ground") {
    const auto p = slant_path(24.0, 0.002, 1.0, PathKind::Uplink);
    CHECK(p.altitude_km(0.0) == doctest::Approx(0.002));
    CHECK(p.altitude_km(p.length_km) == doctest::Approx(24.0).epsilon(1e-12));
}

TEST_CASE("horizontal chord: length, midpoint altitude, endpoints") {
    // oracle: L = 2 (R+H) sin(z0 / 2R), h_min = (R+H) cos(z0 / 2R) - R
    const auto p = horizontal_path(107.5, 24.0);
    CHECK(p.length_km == doctest::Approx(107.90367991484997).epsilon(1e-12));
    CHECK(p.min_alt_km == doctest::Approx(23.772411819299123).epsilon(1e-10));
    // chord is slightly longer than the ground arc by ~(R+H)/R
    CHECK(p.length_km > p.arc_km);
    CHECK(p.altitude_km(0.0) == doctest::Approx(24.0).epsilon(1e-9));
    CHECK(p.altitude_km(p.length_km) == doctest::Approx(24.0).epsilon(1e-9));
    CHECK(p.altitude_km(0.5 * p.length_km) == doctest::Approx(p.min_alt_km).epsilon(1e-12));
}

TEST_CASE("obstruction limit") {
    // oracle: z0* = 2 R acos(R / (R+H))
    CHECK(max_unobstructed_arc_km(24.0) == doctest::Approx(1104.2664096981573).epsilon(1e-12));
    CHECK(max_unobstructed_arc_km(500.0) == doctest::Approx(4890.993704385387).epsilon(1e-12));
    CHECK_NOTHROW(horizontal_path(1104.0, 24.0));
    CHECK_THROWS_AS(horizontal_path(1105.0, 24.0), ObstructedPath);
    const auto grazing = horizontal_path(max_unobstructed_arc_km(24.0) * (1.0 - 1e-9), 24.0);
    CHECK(grazing.min_alt_km >= 0.0);
    CHECK(grazing.min_alt_km < 1e-3);
}

TEST_CASE("xi runs from 1 at the transmitter to 0 at the receiver") {
    const auto up = slant_path(24.0, 0.002, 0.0, PathKind::Uplink);
    CHECK(up.xi_at_altitude(0.002) == doctest::Approx(1.0));
    CHECK(up.xi_at_altitude(24.0) == doctest::Approx(0.0));
    const auto down = slant_path(24.0, 0.002, 0.0, PathKind::Downlink);
    CHECK(down.xi_at_altitude(24.0) == doctest::Approx(1.0));
    CHECK(down.xi_at_altitude(0.002) == doctest::Approx(0.0));
    const auto hor = horizontal_path(100.0, 24.0);
    CHECK(hor.xi_at(0.0) == doctest::Approx(1.0));
    CHECK(hor.xi_at(hor.length_km) == doctest::Approx(0.0));
    CHECK(hor.xi_at(0.25 * hor.length_km) == doctest::Approx(0.75));
}
