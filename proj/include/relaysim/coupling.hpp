#pragma once

#include "relaysim/beam.hpp"

#include <vector>

namespace relaysim::coupling {

// Fried coherence length r0 (meters) seen at the hop receiver; +inf if the
// hop carries no turbulence.
double fried_parameter(const geo::PathGeometry& path, const beam::BeamState& bs,
                       const atmo::Cn2Profile& cn2);

// Per-mode Zernike phase variance (rad^2) for radial orders n = 1..max_order
// (piston excluded); index [n-1]. Every one of the (n+1) azimuthal modes of
// order n shares the same variance.
std::vector<double> zernike_variances(double aperture_m, double r0_m, int max_order);

// Aggregate phase variance beyond max_order: sum_{n > max_order} (n+1) <b_n^2>.
// Those orders sit above any corrector's cutoff, so the chain treats the sum
// as an uncorrected log-coupling penalty; the analytic tail keeps the explicit
// truncation error far below the 1e-4 relative target.
double zernike_tail(double aperture_m, double r0_m, int max_order);

enum class AOModel { IdealCutoff, TemporalResidual };

struct AOConfig {
    bool enabled = true;
    AOModel model = AOModel::TemporalResidual;
    int corrected_orders = 10; // N_AO
    double gain = 1.0;         // integrator gain K_I
    double delay_s = 2e-3;     // loop latency tau_AO
    double integration_s = 1e-3; // WFS integration / hold period T_AO
    double wind_mps = 10.0;    // effective transverse wind for Greenwood scaling
};

// Residual power fraction gamma_n^2 in [0,1] left in radial order n after the
// hop receiver's corrector. 1 above the corrected order (or with AO disabled).
double mode_attenuation(const AOConfig& ao, int order, double aperture_m);

// Aberration budget of one hop as seen by the chain: per-order single-mode
// variances plus the rejection of this hop's own corrector.
struct HopAberration {
    std::vector<double> b2;     // per-mode variance, order n at [n-1]
    std::vector<double> gamma2; // corrector rejection, order n at [n-1]
    double b2_tail = 0.0;       // uncorrected variance above the explicit orders
};

// Cascaded single-mode coupling factor <eta_AO> of a chain of hops (order of
// the vector = beam propagation order). Each hop's variance is attenuated by
// its own corrector and every corrector downstream of it.
double ao_chain_coupling(const std::vector<HopAberration>& hops);

struct Scintillation {
    double sigma_I2 = 0.0; // aperture-averaged intensity variance
    double eta_s = 1.0;    // (1 + sigma_I2)^(-1/4)
};

// Aperture-averaged scintillation of one hop; rytov2 is the hop's path Rytov
// variance (weighted for vertical hops, plane-wave for horizontal hops).
Scintillation scintillation(double rytov2, double wavenumber_per_m,
                            double aperture_m, double path_length_m);

} // namespace relaysim::coupling
