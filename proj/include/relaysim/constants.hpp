#pragma once

namespace relaysim {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSpeedOfLight = 2.99792458e8; // m/s, vacuum
inline constexpr double kEarthRadiusKm = 6371.0;

// Single-mode fiber coupling efficiency for a perfectly corrected, unbroadened
// Gaussian input (apodization-limited).
inline constexpr double kEta0Smf = 0.815;

} // namespace relaysim
