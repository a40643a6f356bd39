#include "simcal/model_io.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "simcal/csv.hpp"

namespace simcal {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kFormatName = "simcal-model";
constexpr int kFormatVersion = 1;

const char* activation_name(Activation a) {
    return a == Activation::relu ? "relu" : "linear";
}

Activation activation_from_name(const std::string& name) {
    if (name == "relu") return Activation::relu;
    if (name == "linear") return Activation::linear;
    throw std::runtime_error("load_model: unknown activation \"" + name + "\"");
}

void check_all_finite(const std::vector<double>& xs, const std::string& what) {
    for (double x : xs) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument("save_model: non-finite value in " + what);
        }
    }
}

ordered_json net_to_json(const Mlp& net) {
    ordered_json layers = ordered_json::array();
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        const Layer& layer = net.layers[l];
        check_all_finite(layer.weights.data, "layer " + std::to_string(l) + " weights");
        check_all_finite(layer.biases, "layer " + std::to_string(l) + " biases");
        ordered_json j;
        j["activation"] = activation_name(layer.activation);
        j["rows"] = layer.weights.rows;
        j["cols"] = layer.weights.cols;
        j["weights"] = layer.weights.data;
        j["biases"] = layer.biases;
        layers.push_back(std::move(j));
    }
    ordered_json j;
    j["layers"] = std::move(layers);
    return j;
}

ordered_json config_to_json(const TrainConfig& cfg) {
    ordered_json j;
    j["learning_rate"] = cfg.learning_rate;
    j["epochs"] = cfg.epochs;
    j["batch_size"] = cfg.batch_size;
    j["seed"] = cfg.seed;
    j["beta1"] = cfg.beta1;
    j["beta2"] = cfg.beta2;
    j["epsilon"] = cfg.epsilon;
    return j;
}

double finite_number(const ordered_json& j, const std::string& what) {
    if (!j.is_number()) {
        throw std::runtime_error("load_model: " + what + " is not a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        throw std::runtime_error("load_model: " + what + " is not finite");
    }
    return v;
}

std::vector<double> finite_array(const ordered_json& j, std::size_t expected,
                                 const std::string& what) {
    if (!j.is_array() || j.size() != expected) {
        throw std::runtime_error("load_model: " + what + " must be an array of " +
                                 std::to_string(expected) + " numbers");
    }
    std::vector<double> xs;
    xs.reserve(expected);
    for (std::size_t i = 0; i < expected; ++i) {
        xs.push_back(finite_number(j[i], what + "[" + std::to_string(i) + "]"));
    }
    return xs;
}

Mlp net_from_json(const ordered_json& j, const std::vector<std::size_t>& widths,
                  const std::vector<Activation>& acts, const std::string& which) {
    const ordered_json& layers = j.at("layers");
    if (!layers.is_array() || layers.size() != acts.size()) {
        throw std::runtime_error("load_model: " + which + " must have " +
                                 std::to_string(acts.size()) + " layers");
    }
    Mlp net;
    net.input_dim = widths.front();
    net.layers.reserve(acts.size());
    for (std::size_t l = 0; l < acts.size(); ++l) {
        const ordered_json& jl = layers[l];
        const std::string where = which + " layer " + std::to_string(l);
        const std::size_t rows = jl.at("rows").get<std::size_t>();
        const std::size_t cols = jl.at("cols").get<std::size_t>();
        if (rows != widths[l + 1] || cols != widths[l]) {
            throw std::runtime_error("load_model: " + where + " has shape " +
                                     std::to_string(rows) + "x" + std::to_string(cols) +
                                     ", expected " + std::to_string(widths[l + 1]) + "x" +
                                     std::to_string(widths[l]));
        }
        Layer layer;
        layer.activation = activation_from_name(jl.at("activation").get<std::string>());
        if (layer.activation != acts[l]) {
            throw std::runtime_error("load_model: " + where + " has unexpected activation");
        }
        layer.weights.rows = rows;
        layer.weights.cols = cols;
        layer.weights.data = finite_array(jl.at("weights"), rows * cols, where + " weights");
        layer.biases = finite_array(jl.at("biases"), rows, where + " biases");
        net.layers.push_back(std::move(layer));
    }
    return net;
}

TrainConfig config_from_json(const ordered_json& j, const std::string& which) {
    TrainConfig cfg;
    cfg.learning_rate = finite_number(j.at("learning_rate"), which + ".learning_rate");
    cfg.epochs = j.at("epochs").get<std::size_t>();
    cfg.batch_size = j.at("batch_size").get<std::size_t>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.beta1 = finite_number(j.at("beta1"), which + ".beta1");
    cfg.beta2 = finite_number(j.at("beta2"), which + ".beta2");
    cfg.epsilon = finite_number(j.at("epsilon"), which + ".epsilon");
    cfg.validate();
    return cfg;
}

}  // namespace

std::string save_model(const ModelFile& m) {
    m.spec.validate();
    const auto widths = m.spec.layer_widths();
    const auto acts = m.spec.layer_activations();
    for (const Mlp* net : {&m.model.base, &m.model.calibrated}) {
        if (net->layers.size() != acts.size()) {
            throw std::invalid_argument("save_model: network layer count does not match spec");
        }
        for (std::size_t l = 0; l < acts.size(); ++l) {
            const Layer& layer = net->layers[l];
            if (layer.weights.rows != widths[l + 1] || layer.weights.cols != widths[l] ||
                layer.biases.size() != widths[l + 1] || layer.activation != acts[l]) {
                throw std::invalid_argument("save_model: layer " + std::to_string(l) +
                                            " does not match the declared architecture");
            }
        }
    }
    for (std::size_t k = 0; k < kNumObservables; ++k) {
        if (!std::isfinite(m.model.normalizer.mean[k]) || !(m.model.normalizer.sd[k] > 0.0)) {
            throw std::invalid_argument("save_model: normalizer statistics for " +
                                        observable_names()[k] + " are invalid");
        }
    }

    ordered_json j;
    j["format"] = kFormatName;
    j["version"] = kFormatVersion;
    j["architecture"] = {{"input_dim", m.spec.input_dim},
                         {"encoder_widths", m.spec.encoder_widths},
                         {"latent_dim", m.spec.latent_dim}};
    j["normalizer"] = {{"mean", m.model.normalizer.mean}, {"sd", m.model.normalizer.sd}};
    j["base"] = net_to_json(m.model.base);
    j["calibrated"] = net_to_json(m.model.calibrated);
    j["n_experiments_used"] = m.model.n_experiments_used;
    ordered_json training;
    training["base"] = config_to_json(m.base_config);
    training["transfer"] = m.has_transfer ? config_to_json(m.transfer_config) : ordered_json();
    j["training"] = std::move(training);
    return j.dump(2) + "\n";
}

ModelFile load_model(const std::string& bytes) {
    ordered_json j;
    try {
        j = ordered_json::parse(bytes);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("load_model: malformed JSON: ") + e.what());
    }
    try {
        if (!j.is_object() || j.value("format", std::string()) != kFormatName) {
            throw std::runtime_error("load_model: not a " + std::string(kFormatName) + " file");
        }
        const int version = j.at("version").get<int>();
        if (version != kFormatVersion) {
            throw std::runtime_error("load_model: unsupported format version " +
                                     std::to_string(version));
        }

        ModelFile m;
        const ordered_json& arch = j.at("architecture");
        m.spec.input_dim = arch.at("input_dim").get<std::size_t>();
        m.spec.encoder_widths = arch.at("encoder_widths").get<std::vector<std::size_t>>();
        m.spec.latent_dim = arch.at("latent_dim").get<std::size_t>();
        m.spec.validate();

        const ordered_json& norm = j.at("normalizer");
        const auto mean = finite_array(norm.at("mean"), kNumObservables, "normalizer.mean");
        const auto sd = finite_array(norm.at("sd"), kNumObservables, "normalizer.sd");
        for (std::size_t k = 0; k < kNumObservables; ++k) {
            if (!(sd[k] > 0.0)) {
                throw std::runtime_error("load_model: normalizer sd for " +
                                         observable_names()[k] + " is not positive");
            }
            m.model.normalizer.mean[k] = mean[k];
            m.model.normalizer.sd[k] = sd[k];
        }

        const auto widths = m.spec.layer_widths();
        const auto acts = m.spec.layer_activations();
        m.model.base = net_from_json(j.at("base"), widths, acts, "base");
        m.model.calibrated = net_from_json(j.at("calibrated"), widths, acts, "calibrated");
        m.model.n_experiments_used = j.at("n_experiments_used").get<std::size_t>();

        const ordered_json& training = j.at("training");
        m.base_config = config_from_json(training.at("base"), "training.base");
        const ordered_json& transfer = training.at("transfer");
        m.has_transfer = !transfer.is_null();
        if (m.has_transfer) {
            m.transfer_config = config_from_json(transfer, "training.transfer");
        }
        return m;
    } catch (const ordered_json::exception& e) {
        throw std::runtime_error(std::string("load_model: ") + e.what());
    }
}

void save_model_file(const std::filesystem::path& path, const ModelFile& m) {
    write_file_atomic(path, save_model(m));
}

ModelFile load_model_file(const std::filesystem::path& path) {
    try {
        return load_model(read_file(path));
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

}  // namespace simcal
