#include "simcal/network.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace simcal {

namespace {

void check_input_dim(const Mlp& net, const Vector& x, const char* who) {
    if (net.layers.empty())
        throw std::invalid_argument(std::string(who) + ": network has no layers");
    if (x.size() != net.input_dim)
        throw std::invalid_argument(std::string(who) + ": input length " +
                                    std::to_string(x.size()) + " != network input_dim " +
                                    std::to_string(net.input_dim));
}

// out = W x + b
void affine_into(const Layer& layer, const Vector& x, Vector& out) {
    const std::size_t rows = layer.weights.rows;
    const std::size_t cols = layer.weights.cols;
    out.resize(rows);
    const double* w = layer.weights.data.data();
    for (std::size_t i = 0; i < rows; ++i) {
        const double* wrow = w + i * cols;
        double acc = layer.biases[i];
        for (std::size_t j = 0; j < cols; ++j) acc += wrow[j] * x[j];
        out[i] = acc;
    }
}

void activate_into(Activation act, const Vector& pre, Vector& post) {
    post.resize(pre.size());
    if (act == Activation::relu) {
        for (std::size_t i = 0; i < pre.size(); ++i) post[i] = pre[i] > 0.0 ? pre[i] : 0.0;
    } else {
        post = pre;
    }
}

// Reused across samples so the training loop does not allocate.
struct BackpropBuffers {
    std::vector<Vector> pre;
    std::vector<Vector> post;
    Vector delta;
    Vector delta_prev;

    explicit BackpropBuffers(std::size_t n_layers) : pre(n_layers), post(n_layers) {}
};

// One forward/backward pass; gradients are accumulated (not overwritten)
// into `grads`. Returns the sample's mse loss.
double backprop_accumulate(const Mlp& net, const Vector& x, const Vector& target,
                           Gradients& grads, BackpropBuffers& buf) {
    const std::size_t n_layers = net.layers.size();

    const Vector* in = &x;
    for (std::size_t l = 0; l < n_layers; ++l) {
        affine_into(net.layers[l], *in, buf.pre[l]);
        activate_into(net.layers[l].activation, buf.pre[l], buf.post[l]);
        in = &buf.post[l];
    }

    const Vector& pred = buf.post[n_layers - 1];
    if (pred.size() != target.size())
        throw std::invalid_argument("backward: target length " + std::to_string(target.size()) +
                                    " != network output dim " + std::to_string(pred.size()));

    double loss = 0.0;
    const double inv_n = 1.0 / static_cast<double>(pred.size());
    buf.delta.resize(pred.size());
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double diff = pred[i] - target[i];
        loss += diff * diff;
        buf.delta[i] = 2.0 * inv_n * diff;  // d mse / d post
    }
    loss *= inv_n;

    for (std::size_t l = n_layers; l-- > 0;) {
        const Layer& layer = net.layers[l];
        Vector& delta = buf.delta;

        if (layer.activation == Activation::relu) {
            for (std::size_t i = 0; i < delta.size(); ++i)
                if (!(buf.pre[l][i] > 0.0)) delta[i] = 0.0;
        }

        const Vector& input = (l == 0) ? x : buf.post[l - 1];
        Matrix& dw = grads.weights[l];
        Vector& db = grads.biases[l];
        for (std::size_t i = 0; i < delta.size(); ++i) {
            const double di = delta[i];
            db[i] += di;
            double* dwrow = dw.data.data() + i * dw.cols;
            for (std::size_t j = 0; j < input.size(); ++j) dwrow[j] += di * input[j];
        }

        if (l > 0) {
            buf.delta_prev.assign(layer.weights.cols, 0.0);
            const double* w = layer.weights.data.data();
            for (std::size_t i = 0; i < delta.size(); ++i) {
                const double di = delta[i];
                const double* wrow = w + i * layer.weights.cols;
                for (std::size_t j = 0; j < layer.weights.cols; ++j)
                    buf.delta_prev[j] += wrow[j] * di;
            }
            std::swap(buf.delta, buf.delta_prev);
        }
    }
    return loss;
}

}  // namespace

std::size_t Mlp::output_dim() const {
    return layers.empty() ? 0 : layers.back().output_dim();
}

FreezeMask FreezeMask::all_trainable(std::size_t n_layers) {
    return FreezeMask{std::vector<bool>(n_layers, true)};
}

TrainConfig TrainConfig::base_defaults() {
    TrainConfig cfg;
    cfg.learning_rate = 0.01;
    cfg.epochs = 800;
    cfg.batch_size = 300;
    return cfg;
}

TrainConfig TrainConfig::transfer_defaults() {
    TrainConfig cfg;
    cfg.learning_rate = 0.001;
    cfg.epochs = 300;
    cfg.batch_size = 1;
    return cfg;
}

void TrainConfig::validate() const {
    if (!(learning_rate > 0.0))
        throw std::invalid_argument("TrainConfig: learning_rate must be > 0");
    if (batch_size < 1) throw std::invalid_argument("TrainConfig: batch_size must be >= 1");
    if (!(beta1 >= 0.0 && beta1 < 1.0))
        throw std::invalid_argument("TrainConfig: beta1 must be in [0,1)");
    if (!(beta2 >= 0.0 && beta2 < 1.0))
        throw std::invalid_argument("TrainConfig: beta2 must be in [0,1)");
    if (!(epsilon > 0.0)) throw std::invalid_argument("TrainConfig: epsilon must be > 0");
}

ParamSet ParamSet::zeros_like(const Mlp& net) {
    ParamSet p;
    p.weights.reserve(net.layers.size());
    p.biases.reserve(net.layers.size());
    for (const Layer& l : net.layers) {
        p.weights.emplace_back(l.weights.rows, l.weights.cols);
        p.biases.emplace_back(l.biases.size(), 0.0);
    }
    return p;
}

void ParamSet::fill(double value) {
    for (auto& w : weights) std::fill(w.data.begin(), w.data.end(), value);
    for (auto& b : biases) std::fill(b.begin(), b.end(), value);
}

void ParamSet::scale(double factor) {
    for (auto& w : weights)
        for (auto& v : w.data) v *= factor;
    for (auto& b : biases)
        for (auto& v : b) v *= factor;
}

AdamState AdamState::fresh(const Mlp& net) {
    return AdamState{ParamSet::zeros_like(net), ParamSet::zeros_like(net), 0};
}

Mlp init_network(const std::vector<std::size_t>& widths,
                 const std::vector<Activation>& activations, SeededRng& rng) {
    if (widths.size() < 2)
        throw std::invalid_argument("init_network: need at least an input and output width");
    if (activations.size() != widths.size() - 1)
        throw std::invalid_argument("init_network: expected " +
                                    std::to_string(widths.size() - 1) + " activations, got " +
                                    std::to_string(activations.size()));
    for (std::size_t w : widths)
        if (w == 0) throw std::invalid_argument("init_network: zero layer width");

    Mlp net;
    net.input_dim = widths.front();
    net.layers.resize(widths.size() - 1);
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        const std::size_t fan_in = widths[l];
        const std::size_t fan_out = widths[l + 1];
        const double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
        Layer& layer = net.layers[l];
        layer.weights.rows = fan_out;
        layer.weights.cols = fan_in;
        layer.weights.data = rng_uniform(rng, -bound, bound, fan_out * fan_in);
        layer.biases.assign(fan_out, 0.0);
        layer.activation = activations[l];
    }
    return net;
}

Vector forward(const Mlp& net, const Vector& x) {
    check_input_dim(net, x, "forward");
    Vector cur = x;
    Vector pre;
    for (const Layer& layer : net.layers) {
        affine_into(layer, cur, pre);
        activate_into(layer.activation, pre, cur);
    }
    return cur;
}

std::vector<LayerTrace> forward_trace(const Mlp& net, const Vector& x) {
    check_input_dim(net, x, "forward_trace");
    std::vector<LayerTrace> trace(net.layers.size());
    const Vector* in = &x;
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        affine_into(net.layers[l], *in, trace[l].pre);
        activate_into(net.layers[l].activation, trace[l].pre, trace[l].post);
        in = &trace[l].post;
    }
    return trace;
}

double mse_loss(const Vector& pred, const Vector& target) {
    if (pred.size() != target.size())
        throw std::invalid_argument("mse_loss: length mismatch: " + std::to_string(pred.size()) +
                                    " vs " + std::to_string(target.size()));
    if (pred.empty()) throw std::invalid_argument("mse_loss: empty vectors");
    double acc = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double d = pred[i] - target[i];
        acc += d * d;
    }
    return acc / static_cast<double>(pred.size());
}

Gradients backward(const Mlp& net, const Vector& x, const Vector& target) {
    check_input_dim(net, x, "backward");
    Gradients grads = ParamSet::zeros_like(net);
    BackpropBuffers buf(net.layers.size());
    backprop_accumulate(net, x, target, grads, buf);
    return grads;
}

void adam_step(Mlp& net, const Gradients& grads, AdamState& state, const FreezeMask& mask,
               const TrainConfig& cfg) {
    cfg.validate();
    const std::size_t n_layers = net.layers.size();
    if (grads.weights.size() != n_layers || grads.biases.size() != n_layers ||
        state.m.weights.size() != n_layers || state.v.weights.size() != n_layers)
        throw std::invalid_argument("adam_step: gradient/state layer count mismatch");
    if (mask.trainable.size() != n_layers)
        throw std::invalid_argument("adam_step: freeze mask has " +
                                    std::to_string(mask.trainable.size()) + " entries for " +
                                    std::to_string(n_layers) + " layers");

    state.step_count += 1;
    const auto t = static_cast<double>(state.step_count);
    const double corr1 = 1.0 - std::pow(cfg.beta1, t);
    const double corr2 = 1.0 - std::pow(cfg.beta2, t);

    auto update = [&](double& theta, double g, double& m, double& v) {
        m = cfg.beta1 * m + (1.0 - cfg.beta1) * g;
        v = cfg.beta2 * v + (1.0 - cfg.beta2) * g * g;
        const double m_hat = m / corr1;
        const double v_hat = v / corr2;
        theta -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.epsilon);
    };

    for (std::size_t l = 0; l < n_layers; ++l) {
        if (!mask.trainable[l]) continue;
        Layer& layer = net.layers[l];
        const Matrix& gw = grads.weights[l];
        const Vector& gb = grads.biases[l];
        if (gw.rows != layer.weights.rows || gw.cols != layer.weights.cols ||
            gb.size() != layer.biases.size())
            throw std::invalid_argument("adam_step: gradient shape mismatch at layer " +
                                        std::to_string(l));
        for (std::size_t k = 0; k < layer.weights.data.size(); ++k)
            update(layer.weights.data[k], gw.data[k], state.m.weights[l].data[k],
                   state.v.weights[l].data[k]);
        for (std::size_t k = 0; k < layer.biases.size(); ++k)
            update(layer.biases[k], gb[k], state.m.biases[l][k], state.v.biases[l][k]);
    }
}

LossHistory train(Mlp& net, const std::vector<Vector>& inputs,
                  const std::vector<Vector>& targets, const FreezeMask& mask,
                  const TrainConfig& cfg) {
    cfg.validate();
    if (inputs.empty()) throw std::invalid_argument("train: empty dataset");
    if (inputs.size() != targets.size())
        throw std::invalid_argument("train: " + std::to_string(inputs.size()) + " inputs vs " +
                                    std::to_string(targets.size()) + " targets");
    if (mask.trainable.size() != net.layers.size())
        throw std::invalid_argument("train: freeze mask size mismatch");
    const std::size_t out_dim = net.output_dim();
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (inputs[i].size() != net.input_dim)
            throw std::invalid_argument("train: input " + std::to_string(i) + " has length " +
                                        std::to_string(inputs[i].size()) + ", expected " +
                                        std::to_string(net.input_dim));
        if (targets[i].size() != out_dim)
            throw std::invalid_argument("train: target " + std::to_string(i) + " has length " +
                                        std::to_string(targets[i].size()) + ", expected " +
                                        std::to_string(out_dim));
    }

    const std::size_t n = inputs.size();
    SeededRng rng(cfg.seed);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});

    AdamState state = AdamState::fresh(net);
    Gradients grads = ParamSet::zeros_like(net);
    BackpropBuffers buf(net.layers.size());

    LossHistory history;
    history.reserve(cfg.epochs);

    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        for (std::size_t i = n - 1; i > 0; --i) {
            const std::size_t j = rng.next_below(i + 1);
            std::swap(order[i], order[j]);
        }

        double epoch_loss = 0.0;
        std::size_t start = 0;
        while (start < n) {
            const std::size_t batch_n = std::min(cfg.batch_size, n - start);
            grads.fill(0.0);
            for (std::size_t k = 0; k < batch_n; ++k) {
                const std::size_t idx = order[start + k];
                epoch_loss += backprop_accumulate(net, inputs[idx], targets[idx], grads, buf);
            }
            grads.scale(1.0 / static_cast<double>(batch_n));
            adam_step(net, grads, state, mask, cfg);
            start += batch_n;
        }

        epoch_loss /= static_cast<double>(n);
        if (!std::isfinite(epoch_loss))
            throw std::runtime_error("train: loss became non-finite at epoch " +
                                     std::to_string(epoch));
        history.push_back(epoch_loss);
    }
    return history;
}

}  // namespace simcal
