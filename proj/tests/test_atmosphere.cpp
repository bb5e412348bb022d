#include "relaysim/atmosphere.hpp"
#include "relaysim/beam.hpp"
#include "relaysim/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

using namespace relaysim;
using namespace relaysim::atmo;

TEST_CASE("Hufnagel-Valley profile pins") {
    const auto cn2 = Cn2Profile::hv57();
    // oracle: direct evaluation of the HV-5/7 formula (w = 21, A = 1.7e-14)
    CHECK(cn2.at_km(0.0) == doctest::Approx(1.727e-14).epsilon(1e-12));
    CHECK(cn2.at_km(5.0) == doctest::Approx(1.1996401011379935e-17).epsilon(1e-10));
    CHECK(cn2.at_km(10.0) == doctest::Approx(1.6657319221014648e-17).epsilon(1e-10));
    CHECK(cn2.at_km(24.0) == doctest::Approx(8.603907936903563e-20).epsilon(1e-10));
    // tropopause wind bump: local maximum near 10 km
    CHECK(cn2.at_km(10.0) > cn2.at_km(5.0));
    CHECK(cn2.at_km(10.0) > cn2.at_km(15.0));
    CHECK_FALSE(cn2.is_zero());
    CHECK(Cn2Profile::zero().is_zero());
}

TEST_CASE("tabulated Cn2 interpolates log-linearly and clamps") {
    const auto cn2 = Cn2Profile::tabulated({{0.0, 1e-14}, {10.0, 1e-16}});
    CHECK(cn2.at_km(5.0) == doctest::Approx(1e-15).epsilon(1e-12));
    CHECK(cn2.at_km(-1.0) == doctest::Approx(1e-14));
    CHECK(cn2.at_km(50.0) == doctest::Approx(1e-16));
    CHECK_THROWS_AS(Cn2Profile::tabulated({{0.0, 1e-14}}), ConfigError);
    CHECK_THROWS_AS(Cn2Profile::tabulated({{0.0, 1e-14}, {0.0, 1e-15}}), ConfigError);
}

TEST_CASE("builtin attenuation table pins") {
    const auto att = AttenuationProfile::builtin_1537nm();
    CHECK_FALSE(att.is_vacuum());
    CHECK(att.at_km(0.0) == doctest::Approx(4.820010e-02).epsilon(1e-12));
    CHECK(att.at_km(24.0) == doctest::Approx(1.173060e-05).epsilon(1e-12));
    // oracle: log-linear interpolation between the bracketing rows
    CHECK(att.at_km(1.1) == doctest::Approx(0.019510229529132884).epsilon(1e-10));
    CHECK(att.at_km(25.0) == doctest::Approx(9.6383784943423e-06).epsilon(1e-10));
    CHECK(att.at_km(1000.0) == doctest::Approx(1e-7));
}

TEST_CASE("vertical one-pass transmittance through the builtin profile") {
    // oracle: closed-form integral of the log-linear segments, 0.002 -> 24 km
    const auto path = geo::slant_path(24.0, 0.002, 0.0, geo::PathKind::Uplink);
    const double T = transmittance(path, AttenuationProfile::builtin_1537nm());
    CHECK(T == doctest::Approx(0.9403439275190582).epsilon(1e-8));
    // ~0.27 dB: clear-sky window extinction
    CHECK(-10.0 * std::log10(T) == doctest::Approx(0.267).epsilon(0.01));
}

TEST_CASE("transmittance of a constant profile is exp(-alpha L)") {
    const auto att = AttenuationProfile::tabulated({{0.0, 0.01}, {600.0, 0.01}});
    const auto path = geo::slant_path(24.0, 0.002, 1.0, geo::PathKind::Uplink);
    CHECK(transmittance(path, att) ==
          doctest::Approx(std::exp(-0.01 * path.length_km)).epsilon(1e-9));
    CHECK(transmittance(path, AttenuationProfile::vacuum()) == doctest::Approx(1.0));
}

TEST_CASE("transmittance splits multiplicatively across stacked layers") {
    const auto att = AttenuationProfile::builtin_1537nm();
    const auto full = geo::slant_path(24.0, 0.002, 0.0, geo::PathKind::Uplink);
    const auto lower = geo::slant_path(12.0, 0.002, 0.0, geo::PathKind::Uplink);
    const auto upper = geo::slant_path(24.0, 12.0, 0.0, geo::PathKind::Uplink);
    CHECK(transmittance(full, att) ==
          doctest::Approx(transmittance(lower, att) * transmittance(upper, att))
              .epsilon(1e-8));
}

TEST_CASE("load() parses two-column tables and rejects malformed input") {
    const std::string good = "/tmp/relaysim_att_good.txt";
    {
        std::ofstream out(good);
        out << "# altitude_km alpha_per_km\n0 0.05\n10 1e-4 # comment\n\n40 1e-6\n";
    }
    const auto att = AttenuationProfile::load(good);
    CHECK(att.at_km(0.0) == doctest::Approx(0.05));
    CHECK(att.at_km(40.0) == doctest::Approx(1e-6));
    std::remove(good.c_str());

    CHECK_THROWS_AS(AttenuationProfile::load("/nonexistent/att.txt"), ConfigError);

    const std::string bad = "/tmp/relaysim_att_bad.txt";
    {
        std::ofstream out(bad);
        out << "0 0.05\n10 oops\n";
    }
    CHECK_THROWS_AS(AttenuationProfile::load(bad), ConfigError);
    {
        std::ofstream out(bad);
        out << "0 0.05 17\n";
    }
    CHECK_THROWS_AS(AttenuationProfile::load(bad), ConfigError);
    {
        std::ofstream out(bad);
        out << "10 0.05\n0 0.04\n";
    }
    CHECK_THROWS_AS(AttenuationProfile::load(bad), ConfigError);
    std::remove(bad.c_str());

    // bundled data file matches the builtin table
    const char* env = std::getenv("RELAYSIM_SOURCE_DIR");
    const std::string data =
        (env ? std::string(env) : std::string(".")) + "/data/attenuation_1537nm.txt";
    if (std::ifstream(data).good()) {
        const auto file = AttenuationProfile::load(data);
        const auto builtin = AttenuationProfile::builtin_1537nm();
        for (double h : {0.0, 1.1, 7.3, 21.0, 24.0, 63.0})
            CHECK(file.at_km(h) == doctest::Approx(builtin.at_km(h)).epsilon(1e-12));
    }
}

TEST_CASE("vertical turbulence moments against quadrature oracle") {
    const auto cn2 = Cn2Profile::hv57();
    const double k = 2.0 * kPi / 1537e-9;
    const auto up = geo::slant_path(24.0, 0.002, 0.0, geo::PathKind::Uplink);
    const auto mu = vertical_moments(up, cn2, k);
    // oracle: scipy quadrature of the HV-5/7 weighted integrals
    CHECK(mu.mu2 == doctest::Approx(2.067606025653882e-12).epsilon(1e-6));
    CHECK(mu.rytov2 == doctest::Approx(1.1025639377079557).epsilon(1e-6));
    const auto down = geo::slant_path(24.0, 0.002, 0.0, geo::PathKind::Downlink);
    const auto md = vertical_moments(down, cn2, k);
    CHECK(md.mu2 == doctest::Approx(4.340187956833149e-14).epsilon(1e-6));
    CHECK(md.rytov2 == doctest::Approx(0.06315139405903149).epsilon(1e-6));
    // uplink turbulence is far worse: strong layers sit near the transmitter
    CHECK(mu.rytov2 > 10.0 * md.rytov2);
    CHECK(vertical_moments(up, Cn2Profile::zero(), k).rytov2 == 0.0);
}

TEST_CASE("mu1 against quadrature oracle") {
    const auto cn2 = Cn2Profile::hv57();
    const auto up = geo::slant_path(24.0, 0.002, 0.0, geo::PathKind::Uplink);
    // W0 = 0.1 m focused to put the waist at 10 km (smaller root)
    const auto bs = beam::derive_beam(
        0.1, beam::curvature_for_waist(0.1, 10000.0, 1537e-9), up.length_km * 1000.0, 1537e-9);
    CHECK(mu1(up, cn2, bs) == doctest::Approx(2.500329643014438e-13).epsilon(1e-6));
}

TEST_CASE("horizontal Rytov variance uses the mid-chord Cn2") {
    const auto path = geo::horizontal_path(107.5, 24.0);
    const auto cn2 = Cn2Profile::hv57(10.0);
    const double k = 2.0 * kPi / 1537e-9;
    // oracle: 1.23 Cn2(h_min) k^{7/6} L^{11/6}
    CHECK(cn2.at_km(path.min_alt_km) ==
          doctest::Approx(2.229735834261099e-20).epsilon(1e-9));
    CHECK(rytov2_horizontal(path, cn2, k) ==
          doctest::Approx(0.0023922982829830334).epsilon(1e-9));
}
