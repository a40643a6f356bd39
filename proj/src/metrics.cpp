#include "simcal/metrics.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace simcal {

namespace {

double population_variance(const std::vector<double>& xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) {
        const double d = x - mean;
        ss += d * d;
    }
    return ss / static_cast<double>(xs.size());
}

void check_lengths(const std::vector<double>& truth, const std::vector<double>& pred,
                   std::size_t min_len, const char* who) {
    if (truth.size() != pred.size()) {
        throw std::invalid_argument(std::string(who) + ": length mismatch, truth has " +
                                    std::to_string(truth.size()) + " and pred has " +
                                    std::to_string(pred.size()));
    }
    if (truth.size() < min_len) {
        throw std::invalid_argument(std::string(who) + ": need at least " +
                                    std::to_string(min_len) + " samples, got " +
                                    std::to_string(truth.size()));
    }
}

}  // namespace

double explained_variance(const std::vector<double>& truth, const std::vector<double>& pred) {
    check_lengths(truth, pred, 2, "explained_variance");
    std::vector<double> residual(truth.size());
    for (std::size_t i = 0; i < truth.size(); ++i) residual[i] = truth[i] - pred[i];
    const double var_truth = population_variance(truth);
    if (!(var_truth > 0.0)) {
        throw std::invalid_argument("explained_variance: truth has zero variance");
    }
    return 1.0 - population_variance(residual) / var_truth;
}

double mean_relative_error(const std::vector<double>& truth, const std::vector<double>& pred) {
    check_lengths(truth, pred, 1, "mean_relative_error");
    double sum = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] == 0.0) {
            throw std::invalid_argument("mean_relative_error: truth[" + std::to_string(i) +
                                        "] is zero");
        }
        sum += std::abs(pred[i] - truth[i]) / std::abs(truth[i]);
    }
    return sum / static_cast<double>(truth.size());
}

std::array<double, kNumObservables> reconstruction_explained_variance(
    const Mlp& model, const Normalizer& normalizer,
    const std::vector<ObservableVector>& eval_data) {
    std::array<std::vector<double>, kNumObservables> truth_cols;
    std::array<std::vector<double>, kNumObservables> pred_cols;
    for (auto& col : truth_cols) col.reserve(eval_data.size());
    for (auto& col : pred_cols) col.reserve(eval_data.size());

    for (const ObservableVector& v : eval_data) {
        const auto t = v.to_array();
        const auto p = reconstruct(model, normalizer, v).to_array();
        for (std::size_t k = 0; k < kNumObservables; ++k) {
            truth_cols[k].push_back(t[k]);
            pred_cols[k].push_back(p[k]);
        }
    }

    std::array<double, kNumObservables> ev;
    for (std::size_t k = 0; k < kNumObservables; ++k) {
        ev[k] = explained_variance(truth_cols[k], pred_cols[k]);
    }
    return ev;
}

HoldoutReport evaluate_holdout(const CalibratedModel& model,
                               const std::vector<ShotRecord>& holdout) {
    if (holdout.empty()) {
        throw std::invalid_argument("evaluate_holdout: holdout is empty");
    }
    std::array<std::vector<double>, kNumObservables> truth_cols;
    std::array<std::vector<double>, kNumObservables> calib_cols;
    std::array<std::vector<double>, kNumObservables> sim_cols;
    for (std::size_t k = 0; k < kNumObservables; ++k) {
        truth_cols[k].reserve(holdout.size());
        calib_cols[k].reserve(holdout.size());
        sim_cols[k].reserve(holdout.size());
    }

    for (const ShotRecord& rec : holdout) {
        const auto t = rec.exp.to_array();
        const auto s = rec.sim.to_array();
        const auto p = predict_experiment(model, rec.sim).to_array();
        for (std::size_t k = 0; k < kNumObservables; ++k) {
            truth_cols[k].push_back(t[k]);
            calib_cols[k].push_back(p[k]);
            sim_cols[k].push_back(s[k]);
        }
    }

    HoldoutReport report;
    report.sample_count = holdout.size();
    for (std::size_t k = 0; k < kNumObservables; ++k) {
        report.calibrated_error[k] = mean_relative_error(truth_cols[k], calib_cols[k]);
        report.baseline_error[k] = mean_relative_error(truth_cols[k], sim_cols[k]);
    }
    return report;
}

std::vector<ActualVsPredictedRow> export_actual_vs_predicted(
    const CalibratedModel& model, const std::vector<ShotRecord>& train,
    const std::vector<ShotRecord>& holdout) {
    std::vector<ActualVsPredictedRow> rows;
    rows.reserve((train.size() + holdout.size()) * kNumObservables);

    auto append = [&](const std::vector<ShotRecord>& shots, const char* split) {
        for (const ShotRecord& rec : shots) {
            const auto measured = rec.exp.to_array();
            const auto sim = rec.sim.to_array();
            const auto pred = predict_experiment(model, rec.sim).to_array();
            for (std::size_t k = 0; k < kNumObservables; ++k) {
                ActualVsPredictedRow row;
                row.shot_index = rec.shot_index;
                row.split = split;
                row.observable = observable_names()[k];
                row.measured = measured[k];
                row.simulation = sim[k];
                row.prediction = pred[k];
                rows.push_back(std::move(row));
            }
        }
    };
    append(train, "train");
    append(holdout, "holdout");
    return rows;
}

}  // namespace simcal
