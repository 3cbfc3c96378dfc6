#pragma once

#include "dcid/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dcid {

enum class Activation { relu, tanh };
enum class Optimizer { adam, sgd };

std::string to_string(Activation a);
std::string to_string(Optimizer o);
Activation parse_activation(const std::string& text);
Optimizer parse_optimizer(const std::string& text);

struct MlpSpec {
    Index input_dim = 1;
    Index feature_dim = 16; // k, width of the representation
    std::vector<Index> hidden_widths{64, 64};
    Activation activation = Activation::relu;
    Index output_dim = 1; // number of linear heads
    std::uint64_t seed = 0;

    void validate() const;
};

struct TrainConfig {
    double learning_rate = 1e-4;
    Index batch_size = 128;
    Index epochs = 30;
    Optimizer optimizer = Optimizer::adam;
    std::uint64_t shuffle_seed = 0;

    void validate() const;
};

struct DenseLayer {
    Matrix weights; // fan_in x fan_out
    Vector bias;    // fan_out
};

/// Feedforward regressor h = g o f. The representation f is a fixed input
/// standardization followed by activated dense layers, the last of width k;
/// the head g is affine with one output column per task.
struct Mlp {
    MlpSpec spec;
    Vector input_shift;
    Vector input_scale;
    std::vector<DenseLayer> layers;
    Matrix head_weights; // k x output_dim
    Vector head_bias;    // output_dim

    /// Penultimate-layer activations, N x k.
    Matrix features(const Matrix& x) const;
    /// Applies the affine head to feature rows.
    Matrix head(const Matrix& features) const;
    Matrix forward(const Matrix& x) const { return head(features(x)); }

    /// Sets the input standardization from the column moments of x.
    void fit_input_scaling(const Matrix& x);

    Index parameter_count() const;
};

/// Seeded fan-in-scaled uniform weights, zero biases, identity input scaling.
Mlp init_mlp(const MlpSpec& spec);

struct MlpGradients {
    std::vector<Matrix> weights;
    std::vector<Vector> biases;
    Matrix head_weights;
    Vector head_bias;
};

/// Sum over outputs of the per-output mean squared error.
double mse_loss(const Mlp& net, const Matrix& x, const Matrix& y);

/// Loss and its exact gradient with respect to every parameter tensor.
double loss_and_gradients(const Mlp& net, const Matrix& x, const Matrix& y, MlpGradients& grads);

struct LossTrace {
    // Entry 0 is before the first update, entry e after epoch e.
    std::vector<double> train;
    std::vector<std::vector<double>> per_task; // [output][epoch]
    std::vector<double> validation;            // empty without validation data
};

struct TrainedMlp {
    Mlp model;
    LossTrace trace;
};

/// Mini-batch training on the summed per-task MSE. Targets are standardized
/// internally and the head is mapped back to target units on return.
/// Throws DivergenceError naming the epoch if the loss turns non-finite.
TrainedMlp train(Mlp net, const Matrix& x, const Matrix& y, const TrainConfig& cfg,
                 const Matrix& x_val = Matrix(), const Matrix& y_val = Matrix());

} // namespace dcid
