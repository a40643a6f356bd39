#include "simcal/calibration.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_set>
#include <utility>

#include "simcal/metrics.hpp"

namespace simcal {

namespace {

void check_sd(const std::array<double, kNumObservables>& sd, const char* who) {
    for (std::size_t i = 0; i < kNumObservables; ++i) {
        if (!(sd[i] > 0.0)) {
            throw std::invalid_argument(std::string(who) + ": normalizer sd for " +
                                        observable_names()[i] + " is not positive");
        }
    }
}

}  // namespace

Vector Normalizer::transform(const ObservableVector& v) const {
    check_sd(sd, "Normalizer::transform");
    const auto a = v.to_array();
    Vector z(kNumObservables);
    for (std::size_t i = 0; i < kNumObservables; ++i) {
        z[i] = (a[i] - mean[i]) / sd[i];
    }
    return z;
}

ObservableVector Normalizer::inverse(const Vector& z) const {
    check_sd(sd, "Normalizer::inverse");
    if (z.size() != kNumObservables) {
        throw std::invalid_argument("Normalizer::inverse: expected " +
                                    std::to_string(kNumObservables) + " values, got " +
                                    std::to_string(z.size()));
    }
    std::array<double, kNumObservables> a;
    for (std::size_t i = 0; i < kNumObservables; ++i) {
        a[i] = z[i] * sd[i] + mean[i];
    }
    return ObservableVector::from_array(a);
}

Normalizer fit_normalizer(const std::vector<ObservableVector>& sim_data) {
    if (sim_data.size() < 2) {
        throw std::invalid_argument("fit_normalizer: need at least 2 samples, got " +
                                    std::to_string(sim_data.size()));
    }
    const double n = static_cast<double>(sim_data.size());

    Normalizer norm;
    norm.mean.fill(0.0);
    for (const ObservableVector& v : sim_data) {
        const auto a = v.to_array();
        for (std::size_t i = 0; i < kNumObservables; ++i) norm.mean[i] += a[i];
    }
    for (std::size_t i = 0; i < kNumObservables; ++i) norm.mean[i] /= n;

    norm.sd.fill(0.0);
    for (const ObservableVector& v : sim_data) {
        const auto a = v.to_array();
        for (std::size_t i = 0; i < kNumObservables; ++i) {
            const double d = a[i] - norm.mean[i];
            norm.sd[i] += d * d;
        }
    }
    for (std::size_t i = 0; i < kNumObservables; ++i) {
        norm.sd[i] = std::sqrt(norm.sd[i] / n);
        if (!(norm.sd[i] > 0.0)) {
            throw std::invalid_argument("fit_normalizer: observable " + observable_names()[i] +
                                        " has zero variance");
        }
    }
    return norm;
}

std::vector<std::size_t> AutoencoderSpec::layer_widths() const {
    std::vector<std::size_t> widths;
    widths.reserve(2 * encoder_widths.size() + 3);
    widths.push_back(input_dim);
    for (std::size_t w : encoder_widths) widths.push_back(w);
    widths.push_back(latent_dim);
    for (auto it = encoder_widths.rbegin(); it != encoder_widths.rend(); ++it) {
        widths.push_back(*it);
    }
    widths.push_back(input_dim);
    return widths;
}

std::vector<Activation> AutoencoderSpec::layer_activations() const {
    const std::size_t n_layers = 2 * encoder_widths.size() + 2;
    std::vector<Activation> acts(n_layers, Activation::relu);
    acts.back() = Activation::linear;
    return acts;
}

void AutoencoderSpec::validate() const {
    if (input_dim == 0) {
        throw std::invalid_argument("AutoencoderSpec: input_dim must be >= 1");
    }
    if (latent_dim == 0) {
        throw std::invalid_argument("AutoencoderSpec: latent_dim must be >= 1");
    }
    for (std::size_t w : encoder_widths) {
        if (w == 0) {
            throw std::invalid_argument("AutoencoderSpec: encoder widths must be >= 1");
        }
    }
}

Mlp build_autoencoder(const AutoencoderSpec& spec, SeededRng& rng) {
    spec.validate();
    return init_network(spec.layer_widths(), spec.layer_activations(), rng);
}

LossHistory train_base(Mlp& ae, const std::vector<ObservableVector>& sim_data,
                       const Normalizer& normalizer, const TrainConfig& cfg) {
    if (sim_data.empty()) {
        throw std::invalid_argument("train_base: sim_data is empty");
    }
    std::vector<Vector> rows;
    rows.reserve(sim_data.size());
    for (const ObservableVector& v : sim_data) {
        require_finite(v, "train_base");
        rows.push_back(normalizer.transform(v));
    }
    return train(ae, rows, rows, FreezeMask::all_trainable(ae.layers.size()), cfg);
}

ObservableVector reconstruct(const Mlp& model, const Normalizer& normalizer,
                             const ObservableVector& v) {
    require_finite(v, "reconstruct");
    return normalizer.inverse(forward(model, normalizer.transform(v)));
}

FreezeMask transfer_freeze_mask(const Mlp& net) {
    const std::size_t n = net.layers.size();
    if (n < 2) {
        throw std::invalid_argument("transfer_freeze_mask: network has fewer than 2 layers");
    }
    FreezeMask mask;
    mask.trainable.assign(n, false);
    mask.trainable[n - 2] = true;
    mask.trainable[n - 1] = true;
    return mask;
}

CalibratedModel transfer_learn(const Mlp& base, const std::vector<ShotRecord>& shots,
                               const Normalizer& normalizer, const TrainConfig& cfg) {
    if (shots.empty()) {
        throw std::invalid_argument("transfer_learn: shot list is empty");
    }
    std::vector<Vector> inputs;
    std::vector<Vector> targets;
    inputs.reserve(shots.size());
    targets.reserve(shots.size());
    for (const ShotRecord& rec : shots) {
        require_finite(rec.sim, "transfer_learn (sim)");
        require_finite(rec.exp, "transfer_learn (exp)");
        inputs.push_back(normalizer.transform(rec.sim));
        targets.push_back(normalizer.transform(rec.exp));
    }

    CalibratedModel model;
    model.base = base;
    model.calibrated = base;
    model.normalizer = normalizer;
    model.n_experiments_used = shots.size();
    train(model.calibrated, inputs, targets, transfer_freeze_mask(base), cfg);
    return model;
}

ObservableVector predict_experiment(const CalibratedModel& model,
                                    const ObservableVector& sim) {
    require_finite(sim, "predict_experiment");
    return model.normalizer.inverse(forward(model.calibrated, model.normalizer.transform(sim)));
}

LearningCurve learning_curve(const Mlp& base,
                             const std::vector<ShotRecord>& shots_chronological,
                             const std::vector<ShotRecord>& holdout,
                             const Normalizer& normalizer, const TrainConfig& cfg,
                             std::size_t threads) {
    if (holdout.empty()) {
        throw std::invalid_argument("learning_curve: holdout is empty");
    }
    std::unordered_set<std::size_t> train_indices;
    for (std::size_t i = 0; i < shots_chronological.size(); ++i) {
        if (i > 0 && shots_chronological[i].shot_index <=
                         shots_chronological[i - 1].shot_index) {
            throw std::invalid_argument(
                "learning_curve: shots must be in ascending shot_index order");
        }
        train_indices.insert(shots_chronological[i].shot_index);
    }
    for (const ShotRecord& rec : holdout) {
        if (train_indices.count(rec.shot_index) > 0) {
            throw std::invalid_argument("learning_curve: holdout shot " +
                                        std::to_string(rec.shot_index) +
                                        " overlaps the training shots");
        }
    }

    const std::size_t n_steps = shots_chronological.size();
    LearningCurve curve(n_steps);

    // Each step restarts from the same immutable base, so steps only share
    // read-only state and can run on any schedule; rows land by index.
    auto run_step = [&](std::size_t step) {
        const std::vector<ShotRecord> prefix(shots_chronological.begin(),
                                             shots_chronological.begin() +
                                                 static_cast<std::ptrdiff_t>(step + 1));
        const CalibratedModel model = transfer_learn(base, prefix, normalizer, cfg);
        curve[step].n_experiments = step + 1;
        curve[step].holdout_error = evaluate_holdout(model, holdout).calibrated_error;
    };

    const std::size_t n_workers = std::min(threads == 0 ? std::size_t{1} : threads, n_steps);
    if (n_workers <= 1) {
        for (std::size_t step = 0; step < n_steps; ++step) run_step(step);
        return curve;
    }

    std::atomic<std::size_t> next_step{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    std::vector<std::thread> workers;
    workers.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w) {
        workers.emplace_back([&]() {
            for (;;) {
                const std::size_t step = next_step.fetch_add(1);
                if (step >= n_steps) return;
                try {
                    run_step(step);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (std::thread& t : workers) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return curve;
}

}  // namespace simcal
