#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "simcal/calibration.hpp"
#include "simcal/observables.hpp"

namespace simcal {

// 1 - Var(truth - pred) / Var(truth), population variance. Invariant under
// a common affine map of both arguments. Hard error on zero truth
// variance or fewer than two samples.
double explained_variance(const std::vector<double>& truth, const std::vector<double>& pred);

// (1/n) * sum |pred_i - truth_i| / |truth_i|, a fraction. Hard error if
// any truth entry is zero (named by index).
double mean_relative_error(const std::vector<double>& truth, const std::vector<double>& pred);

// Per-observable explained variance of reconstruct() over an evaluation
// set, on raw observable values.
std::array<double, kNumObservables> reconstruction_explained_variance(
    const Mlp& model, const Normalizer& normalizer,
    const std::vector<ObservableVector>& eval_data);

// Holdout scorecard: mean relative error of the calibrated predictions and
// of the raw simulation baseline, per observable.
struct HoldoutReport {
    std::array<double, kNumObservables> calibrated_error{};
    std::array<double, kNumObservables> baseline_error{};
    std::size_t sample_count = 0;
};

HoldoutReport evaluate_holdout(const CalibratedModel& model,
                               const std::vector<ShotRecord>& holdout);

// One row per shot per observable: enough to regenerate the three-way
// measured / simulated / calibrated scatter.
struct ActualVsPredictedRow {
    std::size_t shot_index = 0;
    std::string split;       // "train" or "holdout"
    std::string observable;
    double measured = 0.0;
    double simulation = 0.0;
    double prediction = 0.0;
};

std::vector<ActualVsPredictedRow> export_actual_vs_predicted(
    const CalibratedModel& model, const std::vector<ShotRecord>& train,
    const std::vector<ShotRecord>& holdout);

}  // namespace simcal
