#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "simcal/network.hpp"
#include "simcal/observables.hpp"

namespace simcal {

// Per-observable standardization. Fitted on the simulation training set
// only and reused unchanged during transfer, so the transfer step is a
// pure decoder adjustment.
struct Normalizer {
    std::array<double, kNumObservables> mean{};
    std::array<double, kNumObservables> sd{};

    Vector transform(const ObservableVector& v) const;
    ObservableVector inverse(const Vector& z) const;
};

// Population mean/sd per observable. Hard error on fewer than two samples
// or on a zero-variance observable (named in the message).
Normalizer fit_normalizer(const std::vector<ObservableVector>& sim_data);

// Autoencoder shape: input -> encoder widths -> latent -> mirrored decoder
// -> input, relu on every layer except the linear output. The default is
// 7-10-10-5-10-10-7.
struct AutoencoderSpec {
    std::size_t input_dim = kNumObservables;
    std::vector<std::size_t> encoder_widths = {10, 10};
    std::size_t latent_dim = 5;

    std::vector<std::size_t> layer_widths() const;
    std::vector<Activation> layer_activations() const;
    void validate() const;
};

Mlp build_autoencoder(const AutoencoderSpec& spec, SeededRng& rng);

// Reconstruction training: inputs == targets == normalized sim rows, all
// layers trainable.
LossHistory train_base(Mlp& ae, const std::vector<ObservableVector>& sim_data,
                       const Normalizer& normalizer, const TrainConfig& cfg);

// denormalize(forward(model, normalize(v)))
ObservableVector reconstruct(const Mlp& model, const Normalizer& normalizer,
                             const ObservableVector& v);

// Base autoencoder plus its transfer-learned counterpart. The two nets
// share identical architectures and identical frozen-prefix parameters.
struct CalibratedModel {
    Mlp base;
    Mlp calibrated;
    Normalizer normalizer;
    std::size_t n_experiments_used = 0;
};

// Everything frozen except the final two layers.
FreezeMask transfer_freeze_mask(const Mlp& net);

// Clones the base net, freezes the encoder and the first decoder layer,
// and retrains the remaining tail with inputs = normalized sim observables
// and targets = normalized measured observables. Adam restarts from a
// fresh zero state.
CalibratedModel transfer_learn(const Mlp& base, const std::vector<ShotRecord>& shots,
                               const Normalizer& normalizer, const TrainConfig& cfg);

// The corrective simulation -> experiment transformation:
// denormalize(forward(calibrated, normalize(sim))).
ObservableVector predict_experiment(const CalibratedModel& model,
                                    const ObservableVector& sim);

struct LearningCurveRow {
    std::size_t n_experiments = 0;
    std::array<double, kNumObservables> holdout_error{};
};

using LearningCurve = std::vector<LearningCurveRow>;

// For each n = 1..len(shots): transfer-learn the first n shots starting
// from the same base every time, then score mean relative error per
// observable on the holdout. Steps are independent given the immutable
// base; `threads` > 1 runs them concurrently with results assembled by
// index, so the output is identical either way. Hard error if the shots
// are not in ascending shot_index order or overlap the holdout.
LearningCurve learning_curve(const Mlp& base,
                             const std::vector<ShotRecord>& shots_chronological,
                             const std::vector<ShotRecord>& holdout,
                             const Normalizer& normalizer, const TrainConfig& cfg,
                             std::size_t threads = 1);

}  // namespace simcal
