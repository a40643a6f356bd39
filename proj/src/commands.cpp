#include "simcal/commands.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "simcal/calibration.hpp"
#include "simcal/csv.hpp"
#include "simcal/metrics.hpp"
#include "simcal/model_io.hpp"

namespace simcal {

namespace {

// Sub-stream tags so one user seed cannot alias the database stream with
// the shot stream or the weight initialization stream.
constexpr std::uint64_t kSimStream = 0;
constexpr std::uint64_t kShotStream = 1;
constexpr std::uint64_t kInitStream = 2;

// Chronological split: the `holdout_size` highest shot_index records are
// the holdout, everything earlier is the training prefix.
std::pair<std::vector<ShotRecord>, std::vector<ShotRecord>> split_train_holdout(
    std::vector<ShotRecord> shots, std::size_t holdout_size, const std::string& who) {
    if (holdout_size == 0) {
        throw std::invalid_argument(who + ": holdout size must be >= 1");
    }
    if (shots.size() <= holdout_size) {
        throw std::runtime_error(who + ": " + std::to_string(shots.size()) +
                                 " shots cannot cover a holdout of " +
                                 std::to_string(holdout_size) +
                                 " plus at least one training shot");
    }
    std::sort(shots.begin(), shots.end(),
              [](const ShotRecord& a, const ShotRecord& b) { return a.shot_index < b.shot_index; });
    const auto cut = shots.end() - static_cast<std::ptrdiff_t>(holdout_size);
    std::vector<ShotRecord> holdout(cut, shots.end());
    shots.erase(cut, shots.end());
    return {std::move(shots), std::move(holdout)};
}

void print_error_table(std::ostream& out, const HoldoutReport& report) {
    out << std::left << std::setw(16) << "observable" << std::setw(24) << "calibrated_error"
        << "baseline_error" << '\n';
    for (std::size_t k = 0; k < kNumObservables; ++k) {
        out << std::left << std::setw(16) << observable_names()[k] << std::setw(24)
            << format_double(report.calibrated_error[k])
            << format_double(report.baseline_error[k]) << '\n';
    }
}

}  // namespace

void cmd_generate(const GenerateOptions& opt) {
    SeededRng sim_rng(derive_seed(opt.seed, kSimStream));
    const auto rows = generate_sim_database(opt.n_sim, sim_rng);
    write_sim_database_csv(opt.sim_out, rows);

    SeededRng shot_rng(derive_seed(opt.seed, kShotStream));
    const auto shots = generate_shot_series(opt.n_shots, opt.gen, shot_rng);
    write_shots_csv(opt.shots_out, shots);
}

void cmd_train_base(const TrainBaseOptions& opt, std::ostream& out) {
    const auto rows = read_sim_database_csv(opt.sim_csv);
    if (rows.size() < 20) {
        throw std::runtime_error("cmd_train_base: need at least 20 rows to split off an "
                                 "evaluation set, got " +
                                 std::to_string(rows.size()));
    }
    const std::size_t n_eval = rows.size() / 10;
    const std::size_t n_train = rows.size() - n_eval;
    const std::vector<ObservableVector> train_rows(rows.begin(),
                                                   rows.begin() +
                                                       static_cast<std::ptrdiff_t>(n_train));
    const std::vector<ObservableVector> eval_rows(rows.begin() +
                                                      static_cast<std::ptrdiff_t>(n_train),
                                                  rows.end());

    const Normalizer normalizer = fit_normalizer(train_rows);
    const AutoencoderSpec spec;
    SeededRng init_rng(derive_seed(opt.train.seed, kInitStream));
    Mlp ae = build_autoencoder(spec, init_rng);
    train_base(ae, train_rows, normalizer, opt.train);

    const auto ev = reconstruction_explained_variance(ae, normalizer, eval_rows);
    out << "trained on " << n_train << " samples, evaluated on " << n_eval << '\n';
    out << "explained variance:" << '\n';
    for (std::size_t k = 0; k < kNumObservables; ++k) {
        out << "  " << std::left << std::setw(16) << observable_names()[k]
            << format_double(ev[k]) << '\n';
    }

    ModelFile mf;
    mf.spec = spec;
    mf.model.base = ae;
    mf.model.calibrated = std::move(ae);
    mf.model.normalizer = normalizer;
    mf.model.n_experiments_used = 0;
    mf.base_config = opt.train;
    mf.has_transfer = false;
    save_model_file(opt.model_out, mf);
    out << "wrote " << opt.model_out.string() << '\n';
}

void cmd_transfer(const TransferOptions& opt, std::ostream& out) {
    ModelFile mf = load_model_file(opt.model_in);
    auto [train_shots, holdout] =
        split_train_holdout(read_shots_csv(opt.shots_csv), opt.holdout_size, "cmd_transfer");

    const CalibratedModel model =
        transfer_learn(mf.model.base, train_shots, mf.model.normalizer, opt.train);
    const HoldoutReport report = evaluate_holdout(model, holdout);

    out << "transfer-learned on " << train_shots.size() << " shots" << '\n';
    out << "holdout shots:";
    for (const ShotRecord& rec : holdout) out << ' ' << rec.shot_index;
    out << '\n';
    print_error_table(out, report);

    mf.model = model;
    mf.transfer_config = opt.train;
    mf.has_transfer = true;
    save_model_file(opt.model_out, mf);
    write_actual_vs_predicted_csv(opt.avp_out,
                                  export_actual_vs_predicted(model, train_shots, holdout));
    out << "wrote " << opt.model_out.string() << " and " << opt.avp_out.string() << '\n';
}

void cmd_curve(const CurveOptions& opt) {
    const ModelFile mf = load_model_file(opt.model_in);
    auto [train_shots, holdout] =
        split_train_holdout(read_shots_csv(opt.shots_csv), opt.holdout_size, "cmd_curve");

    const LearningCurve curve = learning_curve(mf.model.base, train_shots, holdout,
                                               mf.model.normalizer, opt.train, opt.threads);
    std::vector<std::string> campaigns;
    campaigns.reserve(train_shots.size());
    for (const ShotRecord& rec : train_shots) campaigns.push_back(rec.campaign);
    write_learning_curve_csv(opt.curve_out, curve, campaigns);
}

void cmd_predict(const PredictOptions& opt, std::ostream& out) {
    const ModelFile mf = load_model_file(opt.model_in);
    const ObservableVector sim = ObservableVector::from_array(opt.sim_values);
    const ObservableVector pred = predict_experiment(mf.model, sim);
    const auto a = pred.to_array();
    for (std::size_t k = 0; k < kNumObservables; ++k) {
        out << observable_names()[k] << ' ' << format_double(a[k]) << '\n';
    }
}

}  // namespace simcal
