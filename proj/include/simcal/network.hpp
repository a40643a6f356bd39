#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "simcal/linalg.hpp"
#include "simcal/rng.hpp"

namespace simcal {

enum class Activation { relu, linear };

// One dense layer: out = activation(weights * in + biases).
struct Layer {
    Matrix weights;  // out x in
    Vector biases;   // out
    Activation activation = Activation::relu;

    std::size_t input_dim() const { return weights.cols; }
    std::size_t output_dim() const { return weights.rows; }
};

struct Mlp {
    std::size_t input_dim = 0;
    std::vector<Layer> layers;

    std::size_t output_dim() const;
};

// Which layers train() and adam_step() may touch; one flag per layer.
struct FreezeMask {
    std::vector<bool> trainable;

    static FreezeMask all_trainable(std::size_t n_layers);
};

struct TrainConfig {
    double learning_rate = 0.01;
    std::size_t epochs = 800;
    std::size_t batch_size = 300;
    std::uint64_t seed = 0;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;

    // lr 0.01, 800 epochs, batch 300
    static TrainConfig base_defaults();
    // lr 0.001, 300 epochs, batch 1
    static TrainConfig transfer_defaults();

    void validate() const;
};

// Per-parameter storage shaped exactly like an Mlp; used for gradients and
// for the Adam moment accumulators.
struct ParamSet {
    std::vector<Matrix> weights;
    std::vector<Vector> biases;

    static ParamSet zeros_like(const Mlp& net);
    void fill(double value);
    void scale(double factor);
};

using Gradients = ParamSet;

struct AdamState {
    ParamSet m;  // first moments
    ParamSet v;  // second moments
    std::size_t step_count = 0;

    static AdamState fresh(const Mlp& net);
};

// Per-epoch mean training loss, one entry per epoch run.
using LossHistory = std::vector<double>;

// Glorot-style uniform init: layer weights drawn from
// [-sqrt(6/(fan_in+fan_out)), +sqrt(6/(fan_in+fan_out))), row-major draw
// order, biases zero. Deterministic given the rng state.
Mlp init_network(const std::vector<std::size_t>& widths,
                 const std::vector<Activation>& activations, SeededRng& rng);

Vector forward(const Mlp& net, const Vector& x);

struct LayerTrace {
    Vector pre;   // weights * in + biases
    Vector post;  // activation applied
};

// Forward pass keeping every layer's pre- and post-activation vector.
std::vector<LayerTrace> forward_trace(const Mlp& net, const Vector& x);

// (1/n) * sum_i (pred_i - target_i)^2
double mse_loss(const Vector& pred, const Vector& target);

// d mse_loss(forward(net, x), target) / d theta for every weight and bias,
// by reverse-mode chain rule. The relu derivative is 1 for pre-activation
// > 0 and 0 otherwise.
Gradients backward(const Mlp& net, const Vector& x, const Vector& target);

// One Adam update with bias-corrected moments. Frozen layers keep their
// parameters and their moment accumulators untouched, so freezing and
// later unfreezing is well-defined. step_count increments by one per call.
void adam_step(Mlp& net, const Gradients& grads, AdamState& state,
               const FreezeMask& mask, const TrainConfig& cfg);

// Mini-batch training: each epoch shuffles the sample order with the
// config seed's rng stream (Fisher-Yates), partitions it into batches of
// cfg.batch_size (the final batch may be smaller), averages gradients
// within each batch and applies one adam_step per batch. The recorded
// epoch loss is the mean per-sample loss at the moment each sample was
// visited. Because batch gradients are means, duplicating every sample
// while scaling the batch size by the same factor follows the same
// optimization path up to floating-point reassociation. Fully
// deterministic given (seed, config, data).
LossHistory train(Mlp& net, const std::vector<Vector>& inputs,
                  const std::vector<Vector>& targets, const FreezeMask& mask,
                  const TrainConfig& cfg);

}  // namespace simcal
