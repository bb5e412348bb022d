#include "relaysim/atmosphere.hpp"
#include "relaysim/beam.hpp"
#include "relaysim/errors.hpp"
#include "relaysim/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace relaysim::atmo {

namespace {

double interp_log_linear(const std::vector<std::pair<double, double>>& tab, double h) {
    if (tab.empty()) return 0.0;
    if (h <= tab.front().first) return tab.front().second;
    if (h >= tab.back().first) return tab.back().second;
    auto it = std::upper_bound(tab.begin(), tab.end(), h,
                               [](double v, const auto& row) { return v < row.first; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double t = (h - lo.first) / (hi.first - lo.first);
    // log-linear when both samples are positive, else plain linear
    if (lo.second > 0.0 && hi.second > 0.0)
        return std::exp((1.0 - t) * std::log(lo.second) + t * std::log(hi.second));
    return (1.0 - t) * lo.second + t * hi.second;
}

void check_table(const std::vector<std::pair<double, double>>& tab, const char* what) {
    if (tab.size() < 2) throw ConfigError(std::string(what) + ": need at least two rows");
    for (std::size_t i = 1; i < tab.size(); ++i)
        if (tab[i].first <= tab[i - 1].first)
            throw ConfigError(std::string(what) + ": altitudes must be strictly increasing");
}

} // namespace

Cn2Profile Cn2Profile::hv57(double wind_mps, double ground) {
    Cn2Profile p;
    p.kind_ = Kind::Hv57;
    p.wind_ = wind_mps;
    p.ground_ = ground;
    return p;
}

Cn2Profile Cn2Profile::constant(double value) {
    Cn2Profile p;
    p.kind_ = Kind::Constant;
    p.value_ = value;
    return p;
}

Cn2Profile Cn2Profile::tabulated(std::vector<std::pair<double, double>> table) {
    check_table(table, "Cn2 table");
    Cn2Profile p;
    p.kind_ = Kind::Table;
    p.table_ = std::move(table);
    return p;
}

double Cn2Profile::at_km(double h_km) const {
    switch (kind_) {
        case Kind::Constant:
            return value_;
        case Kind::Table:
            return interp_log_linear(table_, h_km);
        case Kind::Hv57:
            break;
    }
    const double h = std::max(h_km, 0.0) * 1000.0; // meters
    const double w = wind_ / 27.0;
    return 0.00594 * w * w * std::pow(1e-5 * h, 10.0) * std::exp(-h / 1000.0) +
           2.7e-16 * std::exp(-h / 1500.0) + ground_ * std::exp(-h / 100.0);
}

bool Cn2Profile::is_zero() const {
    return kind_ == Kind::Constant && value_ == 0.0;
}

AttenuationProfile AttenuationProfile::vacuum() { return AttenuationProfile{}; }

AttenuationProfile AttenuationProfile::exponential(double alpha0_per_km, double scale_km) {
    std::vector<std::pair<double, double>> tab;
    for (double h = 0.0; h <= 60.0; h += 0.5)
        tab.emplace_back(h, alpha0_per_km * std::exp(-h / scale_km));
    return tabulated(std::move(tab));
}

AttenuationProfile AttenuationProfile::tabulated(std::vector<std::pair<double, double>> table) {
    check_table(table, "attenuation table");
    AttenuationProfile p;
    p.table_ = std::move(table);
    return p;
}

AttenuationProfile AttenuationProfile::builtin_1537nm() {
    // Clear-sky mid-latitude extinction at 1537 nm: boundary-layer aerosol,
    // water-vapor continuum residual, molecular floor, and the background
    // stratospheric aerosol layer. Same numbers as data/attenuation_1537nm.txt.
    static const std::vector<std::pair<double, double>> tab = {
        {0.00, 4.820010e-02}, {0.20, 4.078398e-02}, {0.40, 3.454595e-02},
        {0.60, 2.929533e-02}, {0.80, 2.487263e-02}, {1.00, 2.114446e-02},
        {1.25, 1.729263e-02}, {1.50, 1.417400e-02}, {1.75, 1.164531e-02},
        {2.00, 9.591720e-03}, {2.50, 6.559694e-03}, {3.00, 4.538495e-03},
        {3.50, 3.179826e-03}, {4.00, 2.258008e-03}, {5.00, 1.188446e-03},
        {6.00, 6.639427e-04}, {7.00, 3.939751e-04}, {8.00, 2.479696e-04},
        {9.00, 1.650902e-04}, {10.00, 1.158120e-04}, {12.00, 6.528770e-05},
        {14.00, 4.226883e-05}, {16.00, 2.991643e-05}, {18.00, 2.379428e-05},
        {20.00, 2.648956e-05}, {21.00, 2.680845e-05}, {22.00, 2.262812e-05},
        {23.00, 1.639765e-05}, {24.00, 1.173060e-05}, {26.00, 7.919317e-06},
        {28.00, 6.146353e-06}, {30.00, 4.805997e-06}, {40.00, 1.447606e-06},
        {60.00, 2.106169e-07}, {100.00, 1.007453e-07}, {400.00, 1.000000e-07},
    };
    return tabulated(tab);
}

AttenuationProfile AttenuationProfile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open attenuation table: " + path);
    std::vector<std::pair<double, double>> tab;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        double h, a;
        if (!(ss >> h)) continue; // blank / comment-only line
        if (!(ss >> a))
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected two columns");
        std::string rest;
        if (ss >> rest)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": trailing junk");
        tab.emplace_back(h, a);
    }
    return tabulated(std::move(tab));
}

double AttenuationProfile::at_km(double h_km) const {
    if (table_.empty()) return 0.0;
    return interp_log_linear(table_, h_km);
}

bool AttenuationProfile::is_vacuum() const { return table_.empty(); }

double transmittance(const geo::PathGeometry& path, const AttenuationProfile& att) {
    if (att.is_vacuum()) return 1.0;
    const double od = integrate(
        [&](double x) { return att.at_km(path.altitude_km(x)); }, 0.0, path.length_km);
    return std::exp(-od);
}

VerticalMoments vertical_moments(const geo::PathGeometry& path, const Cn2Profile& cn2,
                                 double wavenumber_per_m) {
    VerticalMoments m;
    if (cn2.is_zero()) return m;
    const double h0 = path.ground_alt_km * 1000.0;
    const double H = path.platform_alt_km * 1000.0;
    const double span = H - h0;
    auto xi = [&](double h_m) { return path.xi_at_altitude(h_m / 1000.0); };
    m.mu2 = integrate(
        [&](double h) { return cn2.at_km(h / 1000.0) * std::pow(xi(h), 5.0 / 3.0); }, h0, H);
    const double i56 = integrate(
        [&](double h) { return cn2.at_km(h / 1000.0) * std::pow(xi(h), 5.0 / 6.0); }, h0, H);
    const double sec = 1.0 / std::cos(path.zenith_rad);
    m.rytov2 = 2.25 * std::pow(span, 5.0 / 6.0) * std::pow(wavenumber_per_m, 7.0 / 6.0) *
               std::pow(sec, 11.0 / 6.0) * i56;
    return m;
}

double mu1(const geo::PathGeometry& path, const Cn2Profile& cn2,
           const beam::BeamState& bs) {
    if (cn2.is_zero()) return 0.0;
    const double h0 = path.ground_alt_km * 1000.0;
    const double H = path.platform_alt_km * 1000.0;
    const double Theta = bs.Theta, ThetaBar = bs.ThetaBar();
    return integrate(
        [&](double h) {
            const double xi = path.xi_at_altitude(h / 1000.0);
            const double w = Theta + ThetaBar * (1.0 - xi);
            return cn2.at_km(h / 1000.0) * std::pow(std::fabs(w), 5.0 / 3.0);
        },
        h0, H);
}

double rytov2_horizontal(const geo::PathGeometry& path, const Cn2Profile& cn2,
                         double wavenumber_per_m) {
    const double cn2v = cn2.at_km(path.min_alt_km);
    const double L = path.length_km * 1000.0;
    return 1.23 * cn2v * std::pow(wavenumber_per_m, 7.0 / 6.0) * std::pow(L, 11.0 / 6.0);
}

} // namespace relaysim::atmo
