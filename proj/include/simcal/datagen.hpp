#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "simcal/observables.hpp"
#include "simcal/rng.hpp"

namespace simcal {

// Four abstract design knobs on [0,1]: drive strength, adiabat knob,
// asymmetry seed, capsule scale.
struct DesignPoint {
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;
    double x4 = 0.0;
};

// Knobs for the synthetic generator. The warp coefficients define how the
// measured values deviate from the simulated ones; defaults keep the
// discrepancy a smooth map that a two-layer decoder tail can learn.
struct GeneratorConfig {
    // Per-observable measurement noise (canonical order), roughly 1% of
    // each observable's typical scale.
    std::array<double, kNumObservables> noise_sd = {0.05,  0.003, 0.02, 0.03,
                                                    0.02,  0.03,  0.0005};

    double bang_time_shift = 0.1;     // ns, added
    double burnwidth_scale = 1.3;     // multiplied
    double yield_shift_base = 0.5;    // log10 units, subtracted
    double yield_shift_asym = 1.5;    // extra log10 shift per unit x3
    double tion_scale = 0.85;         // applied to both ion temperatures
    double tion_offset = 0.3;         // keV, added after scaling
    double dsr_scale = 0.9;           // multiplied
};

// Deterministic "simulation physics": a fixed polynomial map from design
// knobs to the seven observables. With v = 0.2 + 0.8*x1, a = 1 + 3*x2,
// s = x3, c = 0.5 + 0.5*x4:
//   gamma_bang_time  = 8.0 - 2.0*v + 0.5*a
//   gamma_burnwidth  = 0.15 + 0.10*a - 0.05*v
//   log10_yield_dt   = 15 + 2.5*v - 0.8*a - 1.5*s^2 + 1.2*c
//   tion_dt          = 2 + 3*v - 0.5*a*s
//   log10_yield_dd   = log10_yield_dt - 2.2 + 0.1*a
//   tion_dd          = 0.9*tion_dt - 0.1
//   dsr              = 0.02 + 0.04*c - 0.01*a
// Pure: consumes no rng. Hard error on out-of-range design.
ObservableVector simulate(const DesignPoint& d);

// "Experiment truth": applies the configured warp to simulate(d), then
// adds Gaussian measurement noise (seven standard normals drawn in
// canonical order, scaled by noise_sd). dsr is clamped to [0,1] after
// noise, since a measured ratio cannot leave that range.
ObservableVector experiment_truth(const DesignPoint& d, const GeneratorConfig& cfg,
                                  SeededRng& rng);

// n design points uniform on [0,1]^4 (draw order x1,x2,x3,x4 per point)
// mapped through simulate. Hard error on n == 0.
std::vector<ObservableVector> generate_sim_database(std::size_t n, SeededRng& rng);

// n chronological shots. x1 drifts linearly upward with shot index
// (x1 = 0.7*t + 0.3*u with t = i/(n-1)), emulating campaign evolution;
// the campaign label is the x1 quartile. Each record carries the
// simulation prediction, the noisy measured values, and shot_index = i.
std::vector<ShotRecord> generate_shot_series(std::size_t n, const GeneratorConfig& cfg,
                                             SeededRng& rng);

}  // namespace simcal
