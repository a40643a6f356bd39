#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "simcal/datagen.hpp"
#include "simcal/network.hpp"

namespace simcal {

// Batch pipeline commands behind the CLI. Every command is a pure function
// of (options, input files): rerunning with the same seed produces
// byte-identical output files. All file writes are atomic.

struct GenerateOptions {
    std::filesystem::path sim_out = "sim_database.csv";
    std::filesystem::path shots_out = "shots.csv";
    std::size_t n_sim = 20000;
    std::size_t n_shots = 47;
    std::uint64_t seed = 0;
    GeneratorConfig gen;
};

// Writes the simulation database and the chronological shot series.
void cmd_generate(const GenerateOptions& opt);

struct TrainBaseOptions {
    std::filesystem::path sim_csv;
    std::filesystem::path model_out = "model.json";
    TrainConfig train = TrainConfig::base_defaults();
};

// Fits the normalizer and trains the base autoencoder on the first 90% of
// the database, reports per-observable explained variance on the held-out
// last 10%, and writes the model file.
void cmd_train_base(const TrainBaseOptions& opt, std::ostream& out);

struct TransferOptions {
    std::filesystem::path model_in;
    std::filesystem::path shots_csv;
    std::filesystem::path model_out = "calibrated.json";
    std::filesystem::path avp_out = "actual_vs_predicted.csv";
    std::size_t holdout_size = 7;
    TrainConfig train = TrainConfig::transfer_defaults();
};

// Transfer-learns the decoder tail on all shots except the `holdout_size`
// most recent, writes the calibrated model and the actual-vs-predicted
// table, and prints the holdout scorecard against the raw-simulation
// baseline.
void cmd_transfer(const TransferOptions& opt, std::ostream& out);

struct CurveOptions {
    std::filesystem::path model_in;
    std::filesystem::path shots_csv;
    std::filesystem::path curve_out = "learning_curve.csv";
    std::size_t holdout_size = 7;
    std::size_t threads = 1;
    TrainConfig train = TrainConfig::transfer_defaults();
};

// Re-runs the transfer from the same base for every prefix of the training
// shots and writes the per-observable holdout error table.
void cmd_curve(const CurveOptions& opt);

struct PredictOptions {
    std::filesystem::path model_in;
    std::array<double, kNumObservables> sim_values{};
};

// Prints the corrected prediction for one simulation-output vector, one
// "name value" line per observable.
void cmd_predict(const PredictOptions& opt, std::ostream& out);

}  // namespace simcal
