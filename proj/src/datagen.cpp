#include "simcal/datagen.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace simcal {

namespace {

void check_design(const DesignPoint& d) {
    const double knobs[4] = {d.x1, d.x2, d.x3, d.x4};
    for (int i = 0; i < 4; ++i) {
        if (!(knobs[i] >= 0.0 && knobs[i] <= 1.0)) {
            throw std::invalid_argument("simulate: design knob x" + std::to_string(i + 1) +
                                        " outside [0, 1], got " + std::to_string(knobs[i]));
        }
    }
}

// Quartile of the drive-strength knob names the campaign, so later shots
// (which drift toward high x1) tend to land in later campaigns.
std::string campaign_for(double x1) {
    if (x1 < 0.25) return "campaign-a";
    if (x1 < 0.50) return "campaign-b";
    if (x1 < 0.75) return "campaign-c";
    return "campaign-d";
}

}  // namespace

ObservableVector simulate(const DesignPoint& d) {
    check_design(d);
    const double v = 0.2 + 0.8 * d.x1;
    const double a = 1.0 + 3.0 * d.x2;
    const double s = d.x3;
    const double c = 0.5 + 0.5 * d.x4;

    ObservableVector o;
    o.gamma_bang_time = 8.0 - 2.0 * v + 0.5 * a;
    o.gamma_burnwidth = 0.15 + 0.10 * a - 0.05 * v;
    o.log10_yield_dt = 15.0 + 2.5 * v - 0.8 * a - 1.5 * s * s + 1.2 * c;
    o.tion_dt = 2.0 + 3.0 * v - 0.5 * a * s;
    o.log10_yield_dd = o.log10_yield_dt - 2.2 + 0.1 * a;
    o.tion_dd = 0.9 * o.tion_dt - 0.1;
    o.dsr = 0.02 + 0.04 * c - 0.01 * a;
    return o;
}

ObservableVector experiment_truth(const DesignPoint& d, const GeneratorConfig& cfg,
                                  SeededRng& rng) {
    for (double sd : cfg.noise_sd) {
        if (!(sd >= 0.0)) {
            throw std::invalid_argument("experiment_truth: noise_sd must be >= 0");
        }
    }
    ObservableVector o = simulate(d);

    const double yield_shift = cfg.yield_shift_base + cfg.yield_shift_asym * d.x3;
    o.log10_yield_dt -= yield_shift;
    o.tion_dt = cfg.tion_scale * o.tion_dt + cfg.tion_offset;
    o.gamma_bang_time += cfg.bang_time_shift;
    o.gamma_burnwidth *= cfg.burnwidth_scale;
    o.dsr *= cfg.dsr_scale;
    o.log10_yield_dd -= yield_shift;
    o.tion_dd = cfg.tion_scale * o.tion_dd + cfg.tion_offset;

    // One batch of standard normals keeps the stream layout independent of
    // which noise components happen to be zero.
    const Vector z = rng_normal(rng, 0.0, 1.0, kNumObservables);
    auto a = o.to_array();
    for (std::size_t k = 0; k < kNumObservables; ++k) {
        a[k] += cfg.noise_sd[k] * z[k];
    }
    o = ObservableVector::from_array(a);
    o.dsr = std::clamp(o.dsr, 0.0, 1.0);
    return o;
}

std::vector<ObservableVector> generate_sim_database(std::size_t n, SeededRng& rng) {
    if (n == 0) {
        throw std::invalid_argument("generate_sim_database: n must be >= 1");
    }
    std::vector<ObservableVector> rows;
    rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        DesignPoint d;
        d.x1 = rng.next_double();
        d.x2 = rng.next_double();
        d.x3 = rng.next_double();
        d.x4 = rng.next_double();
        rows.push_back(simulate(d));
    }
    return rows;
}

std::vector<ShotRecord> generate_shot_series(std::size_t n, const GeneratorConfig& cfg,
                                             SeededRng& rng) {
    if (n == 0) {
        throw std::invalid_argument("generate_shot_series: n must be >= 1");
    }
    std::vector<ShotRecord> shots;
    shots.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.5;
        DesignPoint d;
        d.x1 = 0.7 * t + 0.3 * rng.next_double();
        d.x2 = rng.next_double();
        d.x3 = rng.next_double();
        d.x4 = rng.next_double();

        ShotRecord rec;
        rec.shot_index = i;
        rec.campaign = campaign_for(d.x1);
        rec.sim = simulate(d);
        rec.exp = experiment_truth(d, cfg, rng);
        shots.push_back(std::move(rec));
    }
    return shots;
}

}  // namespace simcal
