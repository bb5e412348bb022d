#include "relaysim/relay_chain.hpp"
#include "relaysim/constants.hpp"
#include "relaysim/errors.hpp"
#include "relaysim/parallel.hpp"
#include "relaysim/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <unordered_map>

namespace relaysim::chain {

ChainConfig ChainConfig::balloon_defaults() { return ChainConfig{}; }

ChainConfig ChainConfig::satellite_defaults() {
    ChainConfig c;
    c.platform = Platform::Satellite;
    c.platform_alt_km = 500.0;
    c.Dt_up = 1.2;
    c.Dr_up = 0.6;
    c.Dt_down = 0.6;
    c.Dr_down = 1.2;
    // Crosslinks fly above the appreciable atmosphere, and station-kept
    // satellites carry no wind-drift pointing penalty.
    c.horizontal_vacuum = true;
    c.wind_mps = 0.0;
    return c;
}

namespace {

struct HopContext {
    const ChainConfig* cfg = nullptr;
    geo::PathGeometry path;
    HopRole role = HopRole::Horizontal;
    double Dt = 0.0, Dr = 0.0;
    double L0_m = 0.0;
    atmo::Cn2Profile cn2 = atmo::Cn2Profile::zero();
    bool vacuum_hop = false;
    double wind = 0.0;
};

HopContext make_context(const ChainConfig& cfg, const geo::PathGeometry& path, HopRole role) {
    HopContext c;
    c.cfg = &cfg;
    c.path = path;
    c.role = role;
    c.L0_m = path.length_km * 1000.0;
    c.wind = cfg.wind_mps;
    switch (role) {
        case HopRole::Up: c.Dt = cfg.Dt_up; c.Dr = cfg.Dr_up; break;
        case HopRole::Horizontal: c.Dt = cfg.Dt_hor; c.Dr = cfg.Dr_hor; break;
        case HopRole::Down: c.Dt = cfg.Dt_down; c.Dr = cfg.Dr_down; break;
    }
    const bool vacuum = (role == HopRole::Horizontal) && cfg.horizontal_vacuum;
    c.vacuum_hop = vacuum;
    c.cn2 = vacuum ? atmo::Cn2Profile::zero() : cfg.cn2;
    return c;
}

// Full single-hop evaluation with a given transmitter curvature.
HopResult eval_at_f0(const HopContext& c, double d_m, double F0) {
    const ChainConfig& cfg = *c.cfg;
    HopResult r;
    r.path = c.path;
    r.d_star = d_m;
    const double W0 = 0.5 * c.Dt;
    r.bs = beam::derive_beam(W0, F0, c.L0_m, cfg.wavelength_m);
    r.spots = beam::spot_sizes(r.bs, c.path, c.cn2, c.wind);
    r.eta_optics = cfg.eta_t * cfg.eta_r;
    r.eta_atm = c.vacuum_hop ? 1.0 : atmo::transmittance(c.path, cfg.atten);
    r.eta_col = beam::collection_efficiency(c.Dr, r.spots.W_eff);
    r.scint = coupling::scintillation(r.spots.rytov2, r.bs.k, c.Dr, c.L0_m);
    r.r0 = coupling::fried_parameter(c.path, r.bs, c.cn2);
    const int orders = std::max(cfg.ao.corrected_orders, 30);
    r.aberr.b2 = coupling::zernike_variances(c.Dr, r.r0, orders);
    r.aberr.b2_tail = coupling::zernike_tail(c.Dr, r.r0, orders);
    r.aberr.gamma2.resize(orders, 1.0);
    for (int n = 1; n <= orders; ++n)
        r.aberr.gamma2[n - 1] = coupling::mode_attenuation(cfg.ao, n, c.Dr);
    return r;
}

// Hop evaluation at waist distance d with the strongly focused (small-F0)
// branch used by the optimizer.
HopResult eval_at(const HopContext& c, double d_m) {
    const double W0 = 0.5 * c.Dt;
    return eval_at_f0(c, d_m,
                      beam::curvature_for_waist(W0, d_m, c.cfg->wavelength_m));
}

// Hop-local figure of merit: collection times the hop's own coupling factors.
double objective(const HopResult& r) {
    double log_ao = -r.aberr.b2_tail;
    for (std::size_t n = 1; n <= r.aberr.b2.size(); ++n)
        log_ao += -(n + 1.0) / 2.0 *
                  std::log1p(2.0 * r.aberr.gamma2[n - 1] * r.aberr.b2[n - 1]);
    return r.eta_col * r.scint.eta_s * std::exp(log_ao);
}

} // namespace

HopResult evaluate_hop(const ChainConfig& cfg, const geo::PathGeometry& path, HopRole role) {
    const HopContext c = make_context(cfg, path, role);
    const double W0 = 0.5 * c.Dt;
    const double dmax = beam::max_waist_distance(W0, cfg.wavelength_m) * (1.0 - 1e-12);

    if (cfg.policy == WaistPolicy::TxWaist) return eval_at(c, 0.0);
    // Con-focal configuration: the weakly focused branch puts the waist at
    // mid-path with equal spot sizes at both ends (clamped to reachability).
    if (cfg.policy == WaistPolicy::MidPath) {
        const double d = std::min(0.5 * c.L0_m, dmax);
        const double a = cfg.wavelength_m / (kPi * W0 * W0);
        const double disc = std::sqrt(std::max(0.0, 1.0 - 4.0 * a * a * d * d));
        return eval_at_f0(c, d, (1.0 + disc) / (2.0 * a * a * d));
    }

    const double d_hi = std::min(dmax, c.L0_m);
    const int grid = 201;
    double best_d = -1.0, best_val = -std::numeric_limits<double>::infinity();
    HopResult best;
    for (int i = 0; i < grid; ++i) {
        const double d = d_hi * i / (grid - 1.0);
        try {
            HopResult r = eval_at(c, d);
            const double v = objective(r);
            if (v > best_val) {
                best_val = v;
                best_d = d;
                best = std::move(r);
            }
        } catch (const NegativeShortTerm&) {
            // outside the model's validity region; skip this candidate
        }
    }
    if (best_d < 0.0)
        throw NegativeShortTerm("no feasible waist position on this hop");

    // Golden-section refinement around the best grid cell.
    const double step = d_hi / (grid - 1.0);
    double a = std::max(0.0, best_d - step);
    double b = std::min(d_hi, best_d + step);
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    const double tol = 1e-4 * c.L0_m;
    auto safe_obj = [&](double d) {
        try {
            return objective(eval_at(c, d));
        } catch (const NegativeShortTerm&) {
            return -std::numeric_limits<double>::infinity();
        }
    };
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = safe_obj(x1), f2 = safe_obj(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = safe_obj(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = safe_obj(x1);
        }
    }
    const double d_ref = 0.5 * (a + b);
    HopResult refined = eval_at(c, d_ref);
    return objective(refined) >= best_val ? refined : best;
}

namespace {

ChannelBudget assemble(const ChainConfig& cfg, const HopResult& up,
                       const std::vector<HopResult>& horizontal, const HopResult& down) {
    ChannelBudget b;
    b.relay_count = cfg.relay_count;
    b.up = up;
    b.down = down;
    if (!horizontal.empty()) b.horizontal = horizontal.front();

    std::vector<coupling::HopAberration> cascade;
    cascade.reserve(horizontal.size() + 2);
    cascade.push_back(up.aberr);
    double eta_hops = up.eta_hop() * down.eta_hop();
    double eta_s = up.scint.eta_s * down.scint.eta_s;
    for (const auto& h : horizontal) {
        cascade.push_back(h.aberr);
        eta_hops *= h.eta_hop();
        eta_s *= h.scint.eta_s;
    }
    cascade.push_back(down.aberr);

    b.eta_ao = coupling::ao_chain_coupling(cascade);
    b.eta_s = eta_s;
    b.eta_smf = kEta0Smf * b.eta_ao * b.eta_s;
    b.total = eta_hops * b.eta_smf;
    b.total_db = 10.0 * std::log10(b.total);
    return b;
}

} // namespace

ChannelBudget chain_budget(const ChainConfig& cfg) {
    if (cfg.relay_count < 2) throw ConfigError("relay_count must be at least 2");
    const double z0 = cfg.ground_distance_km / (cfg.relay_count - 1);
    const auto up_path = geo::slant_path(cfg.platform_alt_km, cfg.ground_alt_km, 0.0,
                                         geo::PathKind::Uplink);
    const auto down_path = geo::slant_path(cfg.platform_alt_km, cfg.ground_alt_km, 0.0,
                                           geo::PathKind::Downlink);
    const auto hor_path = geo::horizontal_path(z0, cfg.platform_alt_km);

    const HopResult up = evaluate_hop(cfg, up_path, HopRole::Up);
    const HopResult down = evaluate_hop(cfg, down_path, HopRole::Down);
    const HopResult hor = evaluate_hop(cfg, hor_path, HopRole::Horizontal);

    std::vector<HopResult> hors(cfg.relay_count - 1, hor);
    ChannelBudget b = assemble(cfg, up, hors, down);
    b.hop_arc_km = z0;
    return b;
}

EnvelopeResult optimize_relay_count(const ChainConfig& cfg, int n_min, int n_max) {
    const double z0max = geo::max_unobstructed_arc_km(cfg.platform_alt_km);
    if (n_min <= 0) n_min = (int)std::ceil(cfg.ground_distance_km / z0max) + 1;
    n_min = std::max(n_min, 2);
    if (n_max <= 0) n_max = std::max(n_min, (int)std::ceil(cfg.ground_distance_km / 50.0));

    // Vertical hops do not depend on the relay count; evaluate once.
    const auto up_path = geo::slant_path(cfg.platform_alt_km, cfg.ground_alt_km, 0.0,
                                         geo::PathKind::Uplink);
    const auto down_path = geo::slant_path(cfg.platform_alt_km, cfg.ground_alt_km, 0.0,
                                           geo::PathKind::Downlink);
    const HopResult up = evaluate_hop(cfg, up_path, HopRole::Up);
    const HopResult down = evaluate_hop(cfg, down_path, HopRole::Down);

    EnvelopeResult res;
    res.points.resize(n_max - n_min + 1);
    std::vector<ChannelBudget> budgets(res.points.size());
    parallel_for(res.points.size(), [&](std::size_t idx) {
        const int N = n_min + (int)idx;
        EnvelopePoint& pt = res.points[idx];
        pt.relay_count = N;
        pt.hop_arc_km = cfg.ground_distance_km / (N - 1);
        try {
            ChainConfig c = cfg;
            c.relay_count = N;
            const auto hor_path = geo::horizontal_path(pt.hop_arc_km, c.platform_alt_km);
            const HopResult hor = evaluate_hop(c, hor_path, HopRole::Horizontal);
            std::vector<HopResult> hors(N - 1, hor);
            budgets[idx] = assemble(c, up, hors, down);
            budgets[idx].hop_arc_km = pt.hop_arc_km;
            pt.total_db = budgets[idx].total_db;
            pt.feasible = true;
        } catch (const ObstructedPath&) {
        } catch (const UnreachableWaist&) {
        } catch (const NegativeShortTerm&) {
        }
    });
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < res.points.size(); ++i) {
        if (res.points[i].feasible && res.points[i].total_db > best) {
            best = res.points[i].total_db;
            res.best = budgets[i];
            res.best_relay_count = res.points[i].relay_count;
        }
    }
    if (res.best_relay_count == 0)
        throw EmptyFeasibleSet("no feasible relay count in the scanned range");
    return res;
}

namespace {

// Horizontal geometry for a platform-to-platform chord of known length
// (inverse of the arc-based constructor).
geo::PathGeometry horizontal_from_chord(double chord_km, double alt_km) {
    const double rp = kEarthRadiusKm + alt_km;
    const double half = std::asin(std::min(1.0, chord_km / (2.0 * rp)));
    return geo::horizontal_path(2.0 * kEarthRadiusKm * half, alt_km);
}

} // namespace

JitterResult jitter_monte_carlo(const ChainConfig& cfg, const JitterSpec& spec) {
    const int N = cfg.relay_count;
    if (N < 2) throw ConfigError("relay_count must be at least 2");
    const double L = cfg.ground_distance_km;
    const double z0 = L / (N - 1);
    const double span_km = cfg.platform_alt_km - cfg.ground_alt_km;

    JitterResult out;
    out.ideal_db = chain_budget(cfg).total_db;
    out.trials = spec.trials;
    out.samples_db.assign(spec.trials, std::numeric_limits<double>::quiet_NaN());

    // Waist optimization dominates the cost; memoize per quantized geometry.
    struct Cache {
        std::unordered_map<long long, HopResult> hor, up, down;
    };
    std::mutex mtx;
    Cache cache;
    auto cached_hor = [&](double chord_km) {
        const long long key = (long long)std::llround(chord_km * 100.0); // 10 m bins
        {
            std::lock_guard<std::mutex> lk(mtx);
            auto it = cache.hor.find(key);
            if (it != cache.hor.end()) return it->second;
        }
        const auto path = horizontal_from_chord(key / 100.0, cfg.platform_alt_km);
        HopResult r = evaluate_hop(cfg, path, HopRole::Horizontal);
        std::lock_guard<std::mutex> lk(mtx);
        return cache.hor.emplace(key, std::move(r)).first->second;
    };
    auto cached_vert = [&](double zenith, HopRole role) {
        auto& map = role == HopRole::Up ? cache.up : cache.down;
        const long long key = (long long)std::llround(zenith * 1e4); // 0.1 mrad bins
        {
            std::lock_guard<std::mutex> lk(mtx);
            auto it = map.find(key);
            if (it != map.end()) return it->second;
        }
        const auto path = geo::slant_path(
            cfg.platform_alt_km, cfg.ground_alt_km, key / 1e4,
            role == HopRole::Up ? geo::PathKind::Uplink : geo::PathKind::Downlink);
        HopResult r = evaluate_hop(cfg, path, role);
        std::lock_guard<std::mutex> lk(mtx);
        return map.emplace(key, std::move(r)).first->second;
    };

    parallel_for((std::size_t)spec.trials, [&](std::size_t t) {
        Rng rng(spec.seed, t);
        // Perturbed platform positions in the ground plane (km). Endpoints
        // drift within +/- endpoint_km, interior relays within a fraction of
        // the hop arc.
        std::vector<double> xs(N), ys(N);
        for (int i = 0; i < N; ++i) {
            const double amp = (i == 0 || i == N - 1) ? spec.endpoint_km
                                                      : spec.relay_frac * z0;
            xs[i] = i * z0 + rng.symmetric(amp);
            ys[i] = rng.symmetric(amp);
        }
        try {
            const double up_off = std::hypot(xs[0], ys[0]);
            const double dn_off = std::hypot(xs[N - 1] - L, ys[N - 1]);
            const HopResult up = cached_vert(std::atan(up_off / span_km), HopRole::Up);
            const HopResult down = cached_vert(std::atan(dn_off / span_km), HopRole::Down);
            std::vector<HopResult> hors;
            hors.reserve(N - 1);
            for (int i = 0; i + 1 < N; ++i)
                hors.push_back(cached_hor(std::hypot(xs[i + 1] - xs[i], ys[i + 1] - ys[i])));
            ChainConfig c = cfg;
            out.samples_db[t] = assemble(c, up, hors, down).total_db;
        } catch (const ObstructedPath&) {
        } catch (const NegativeShortTerm&) {
        }
    });

    double sum = 0.0, sum2 = 0.0;
    int ok = 0;
    for (double v : out.samples_db) {
        if (std::isnan(v)) continue;
        sum += v;
        sum2 += v * v;
        ++ok;
    }
    out.failures = spec.trials - ok;
    if (ok > 0) {
        out.mean_db = sum / ok;
        out.std_db = ok > 1 ? std::sqrt(std::max(0.0, (sum2 - sum * sum / ok) / (ok - 1))) : 0.0;
    }
    return out;
}

} // namespace relaysim::chain
