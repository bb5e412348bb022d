#pragma once

#include "relaysim/geometry.hpp"

#include <string>
#include <utility>
#include <vector>

namespace relaysim::beam {
struct BeamState; // beam.hpp
}

namespace relaysim::atmo {

// Refractive-index structure parameter profile, value in m^(-2/3).
class Cn2Profile {
public:
    // Hufnagel-Valley with rms upper-air wind v (m/s) and ground value A.
    static Cn2Profile hv57(double wind_mps = 21.0, double ground = 1.7e-14);
    static Cn2Profile constant(double value);
    static Cn2Profile zero() { return constant(0.0); }
    // Table of (altitude_km, cn2); log-linear interpolation, clamped ends.
    static Cn2Profile tabulated(std::vector<std::pair<double, double>> table);

    double at_km(double h_km) const;
    bool is_zero() const;

private:
    enum class Kind { Hv57, Constant, Table } kind_ = Kind::Constant;
    double wind_ = 21.0, ground_ = 1.7e-14, value_ = 0.0;
    std::vector<std::pair<double, double>> table_;
};

// Extinction coefficient alpha(h) in km^-1.
class AttenuationProfile {
public:
    static AttenuationProfile vacuum();
    static AttenuationProfile exponential(double alpha0_per_km, double scale_km);
    static AttenuationProfile tabulated(std::vector<std::pair<double, double>> table);
    // Bundled clear-sky profile at 1537 nm (same data as data/attenuation_1537nm.txt).
    static AttenuationProfile builtin_1537nm();
    // Two numeric columns (altitude_km alpha_per_km), '#' comments, strictly
    // increasing altitudes.
    static AttenuationProfile load(const std::string& path);

    double at_km(double h_km) const;
    bool is_vacuum() const;

private:
    std::vector<std::pair<double, double>> table_; // empty => vacuum
};

// exp(-integral of alpha along the hop).
double transmittance(const geo::PathGeometry& path, const AttenuationProfile& att);

// Path-weighted turbulence moments for vertical hops. All integrals are taken
// over altitude in meters; results feed the spot-size / Fried / scintillation
// formulas directly.
struct VerticalMoments {
    double mu2 = 0.0;    // int Cn2 xi^{5/3} dh        [m^{1/3}]
    double rytov2 = 0.0; // 2.25 (H-h0)^{5/6} k^{7/6} sec^{11/6} int Cn2 xi^{5/6} dh
};
VerticalMoments vertical_moments(const geo::PathGeometry& path, const Cn2Profile& cn2,
                                 double wavenumber_per_m);

// mu1 = int Cn2 [Theta + ThetaBar (1-xi)]^{5/3} dh; needs the receiver-plane
// beam parameters.
double mu1(const geo::PathGeometry& path, const Cn2Profile& cn2,
           const beam::BeamState& bs);

// Rytov variance of a horizontal hop, evaluated with the (constant) Cn2 value
// at the chord's minimum altitude.
double rytov2_horizontal(const geo::PathGeometry& path, const Cn2Profile& cn2,
                         double wavenumber_per_m);

} // namespace relaysim::atmo
