// simcal: generate synthetic datasets, train the base autoencoder,
// transfer-learn it on experiment records, and query the calibrated model.
#include <algorithm>
#include <exception>
#include <iostream>
#include <vector>

#include <CLI11.hpp>

#include "simcal/commands.hpp"

namespace {

// Training knobs shared by every command that runs the optimizer. The seed
// is required: reproducibility is part of each command's contract.
void add_train_options(CLI::App* cmd, simcal::TrainConfig& cfg) {
    cmd->add_option("--lr", cfg.learning_rate, "learning rate")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--epochs", cfg.epochs, "number of training epochs")
        ->capture_default_str();
    cmd->add_option("--batch-size", cfg.batch_size, "minibatch size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--seed", cfg.seed, "RNG seed")->required();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Calibrates simulated implosion observables against experiment records "
                 "by transfer-learning an autoencoder's decoder tail."};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from an INI file");

    simcal::GenerateOptions gen_opt;
    CLI::App* generate = app.add_subcommand(
        "generate", "write a synthetic simulation database and shot series");
    generate->add_option("--sim-out", gen_opt.sim_out, "simulation database CSV path")
        ->capture_default_str();
    generate->add_option("--shots-out", gen_opt.shots_out, "shot series CSV path")
        ->capture_default_str();
    generate->add_option("--n-sim", gen_opt.n_sim, "simulation database size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    generate->add_option("--n-shots", gen_opt.n_shots, "number of shots")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    generate->add_option("--seed", gen_opt.seed, "RNG seed")->required();
    generate->callback([&]() { simcal::cmd_generate(gen_opt); });

    simcal::TrainBaseOptions base_opt;
    CLI::App* train_base = app.add_subcommand(
        "train-base", "train the autoencoder on a simulation database");
    train_base->add_option("--sim", base_opt.sim_csv, "simulation database CSV")->required();
    train_base->add_option("--model-out", base_opt.model_out, "output model path")
        ->capture_default_str();
    add_train_options(train_base, base_opt.train);
    train_base->callback([&]() { simcal::cmd_train_base(base_opt, std::cout); });

    simcal::TransferOptions transfer_opt;
    CLI::App* transfer = app.add_subcommand(
        "transfer", "retrain the decoder tail on experiment shots");
    transfer->add_option("--model", transfer_opt.model_in, "base model path")->required();
    transfer->add_option("--shots", transfer_opt.shots_csv, "shot series CSV")->required();
    transfer->add_option("--model-out", transfer_opt.model_out, "output model path")
        ->capture_default_str();
    transfer->add_option("--avp-out", transfer_opt.avp_out,
                         "actual-vs-predicted table path")
        ->capture_default_str();
    transfer->add_option("--holdout", transfer_opt.holdout_size,
                         "how many of the most recent shots to hold out")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_train_options(transfer, transfer_opt.train);
    transfer->callback([&]() { simcal::cmd_transfer(transfer_opt, std::cout); });

    simcal::CurveOptions curve_opt;
    CLI::App* curve = app.add_subcommand(
        "curve", "recompute the transfer for every shot prefix and tabulate holdout error");
    curve->add_option("--model", curve_opt.model_in, "base model path")->required();
    curve->add_option("--shots", curve_opt.shots_csv, "shot series CSV")->required();
    curve->add_option("--out", curve_opt.curve_out, "learning curve CSV path")
        ->capture_default_str();
    curve->add_option("--holdout", curve_opt.holdout_size,
                      "how many of the most recent shots to hold out")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    curve->add_option("--threads", curve_opt.threads, "worker threads for the curve steps")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_train_options(curve, curve_opt.train);
    curve->callback([&]() { simcal::cmd_curve(curve_opt); });

    simcal::PredictOptions predict_opt;
    std::vector<double> sim_values;
    CLI::App* predict = app.add_subcommand(
        "predict", "print the calibrated prediction for one simulation output vector");
    predict->add_option("--model", predict_opt.model_in, "calibrated model path")->required();
    predict
        ->add_option("values", sim_values,
                     "the seven simulation observables, in file-header order")
        ->expected(static_cast<int>(simcal::kNumObservables))
        ->required();
    predict->callback([&]() {
        std::copy(sim_values.begin(), sim_values.end(), predict_opt.sim_values.begin());
        simcal::cmd_predict(predict_opt, std::cout);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
