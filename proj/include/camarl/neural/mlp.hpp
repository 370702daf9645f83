#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace camarl::neural {

enum class Activation { relu, tanh, identity };

std::string_view to_string(Activation activation);
Activation activation_from_string(std::string_view name);

// Fully connected feed-forward network. weights[l] maps layer l (columns) to
// layer l + 1 (rows); activations[l] is applied to the output of weights[l].
// The last activation is always identity.
struct MlpParameters {
    std::vector<int> layer_sizes;
    std::vector<Activation> activations;
    std::vector<Eigen::MatrixXd> weights;
    std::vector<Eigen::VectorXd> biases;

    std::size_t num_layers() const { return weights.size(); }
    int input_size() const { return layer_sizes.front(); }
    int output_size() const { return layer_sizes.back(); }
    std::size_t parameter_count() const;
    bool same_architecture(const MlpParameters& other) const;
};

bool bitwise_equal(const MlpParameters& a, const MlpParameters& b);

// Throws InvalidInput on inconsistent shapes or non-finite entries.
void validate(const MlpParameters& params);

// Weights uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)], biases zero.
MlpParameters make_mlp(const std::vector<int>& layer_sizes, Activation hidden_activation,
                       std::mt19937_64& rng);

// Post-activation outputs of every layer, input first. Columns are samples.
struct ForwardCache {
    std::vector<Eigen::MatrixXd> activations;

    const Eigen::MatrixXd& output() const { return activations.back(); }
};

struct ForwardResult {
    Eigen::VectorXd output;
    ForwardCache cache;
};

// Gradient-shaped storage; also used for Adam moments.
struct MlpGradients {
    std::vector<Eigen::MatrixXd> weights;
    std::vector<Eigen::VectorXd> biases;

    static MlpGradients zeros_like(const MlpParameters& params);
};

struct BackwardResult {
    MlpGradients parameters;
    Eigen::MatrixXd input_gradient;
};

ForwardResult mlp_forward(const MlpParameters& params, const Eigen::VectorXd& input);
ForwardCache mlp_forward_batch(const MlpParameters& params, const Eigen::MatrixXd& inputs);

// Forward pass without keeping intermediate activations.
Eigen::MatrixXd mlp_predict(const MlpParameters& params, const Eigen::MatrixXd& inputs);

// output_gradient has one column per sample in the cached batch. Parameter
// gradients are summed over the batch.
BackwardResult mlp_backward(const MlpParameters& params, const ForwardCache& cache,
                            const Eigen::MatrixXd& output_gradient);

}  // namespace camarl::neural
