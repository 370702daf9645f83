#include "camarl/neural/mlp.hpp"

#include <cmath>
#include <cstring>
#include <string>

#include "camarl/errors.hpp"

namespace camarl::neural {

namespace {

void apply_activation(Activation activation, Eigen::MatrixXd& z) {
    switch (activation) {
    case Activation::relu:
        z = z.array().max(0.0);
        break;
    case Activation::tanh:
        z = z.array().tanh();
        break;
    case Activation::identity:
        break;
    }
}

// Multiplies delta in place by the activation derivative, expressed through
// the post-activation value a.
void apply_derivative(Activation activation, const Eigen::MatrixXd& a, Eigen::MatrixXd& delta) {
    switch (activation) {
    case Activation::relu:
        delta = (a.array() > 0.0).select(delta, 0.0);
        break;
    case Activation::tanh:
        delta.array() *= 1.0 - a.array().square();
        break;
    case Activation::identity:
        break;
    }
}

void check_input(const MlpParameters& params, const Eigen::MatrixXd& inputs) {
    if (params.layer_sizes.empty() || inputs.rows() != params.input_size()) {
        throw InvalidInput("mlp input has " + std::to_string(inputs.rows()) + " rows, expected " +
                           std::to_string(params.layer_sizes.empty() ? 0 : params.input_size()));
    }
}

}  // namespace

std::string_view to_string(Activation activation) {
    switch (activation) {
    case Activation::relu:
        return "relu";
    case Activation::tanh:
        return "tanh";
    case Activation::identity:
        return "identity";
    }
    return "identity";
}

Activation activation_from_string(std::string_view name) {
    if (name == "relu") return Activation::relu;
    if (name == "tanh") return Activation::tanh;
    if (name == "identity") return Activation::identity;
    throw InvalidInput("unknown activation '" + std::string(name) + "'");
}

std::size_t MlpParameters::parameter_count() const {
    std::size_t count = 0;
    for (std::size_t l = 0; l < weights.size(); ++l) {
        count += static_cast<std::size_t>(weights[l].size() + biases[l].size());
    }
    return count;
}

bool MlpParameters::same_architecture(const MlpParameters& other) const {
    return layer_sizes == other.layer_sizes && activations == other.activations;
}

bool bitwise_equal(const MlpParameters& a, const MlpParameters& b) {
    if (!a.same_architecture(b) || a.weights.size() != b.weights.size()) return false;
    for (std::size_t l = 0; l < a.weights.size(); ++l) {
        if (a.weights[l].rows() != b.weights[l].rows() || a.weights[l].cols() != b.weights[l].cols() ||
            a.biases[l].size() != b.biases[l].size()) {
            return false;
        }
        if (std::memcmp(a.weights[l].data(), b.weights[l].data(),
                        sizeof(double) * static_cast<std::size_t>(a.weights[l].size())) != 0 ||
            std::memcmp(a.biases[l].data(), b.biases[l].data(),
                        sizeof(double) * static_cast<std::size_t>(a.biases[l].size())) != 0) {
            return false;
        }
    }
    return true;
}

void validate(const MlpParameters& params) {
    const auto& sizes = params.layer_sizes;
    if (sizes.size() < 2) throw InvalidInput("mlp needs at least an input and an output layer");
    for (int s : sizes) {
        if (s <= 0) throw InvalidInput("mlp layer sizes must be positive");
    }
    const std::size_t layers = sizes.size() - 1;
    if (params.weights.size() != layers || params.biases.size() != layers ||
        params.activations.size() != layers) {
        throw InvalidInput("mlp layer count does not match layer_sizes");
    }
    if (params.activations.back() != Activation::identity) {
        throw InvalidInput("mlp output layer must use the identity activation");
    }
    for (std::size_t l = 0; l < layers; ++l) {
        if (params.weights[l].rows() != sizes[l + 1] || params.weights[l].cols() != sizes[l] ||
            params.biases[l].size() != sizes[l + 1]) {
            throw InvalidInput("mlp layer " + std::to_string(l) + " has inconsistent shape");
        }
        if (!params.weights[l].allFinite() || !params.biases[l].allFinite()) {
            throw InvalidInput("mlp layer " + std::to_string(l) + " holds a non-finite value");
        }
    }
}

MlpParameters make_mlp(const std::vector<int>& layer_sizes, Activation hidden_activation,
                       std::mt19937_64& rng) {
    MlpParameters params;
    params.layer_sizes = layer_sizes;
    if (layer_sizes.size() < 2) throw InvalidInput("mlp needs at least an input and an output layer");
    const std::size_t layers = layer_sizes.size() - 1;
    for (std::size_t l = 0; l < layers; ++l) {
        const int fan_in = layer_sizes[l];
        const int fan_out = layer_sizes[l + 1];
        if (fan_in <= 0 || fan_out <= 0) throw InvalidInput("mlp layer sizes must be positive");
        const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
        std::uniform_real_distribution<double> dist(-bound, bound);
        Eigen::MatrixXd w(fan_out, fan_in);
        // Row-major fill order keeps initialization independent of storage order.
        for (int r = 0; r < fan_out; ++r) {
            for (int c = 0; c < fan_in; ++c) w(r, c) = dist(rng);
        }
        params.weights.push_back(std::move(w));
        params.biases.push_back(Eigen::VectorXd::Zero(fan_out));
        params.activations.push_back(l + 1 == layers ? Activation::identity : hidden_activation);
    }
    return params;
}

MlpGradients MlpGradients::zeros_like(const MlpParameters& params) {
    MlpGradients g;
    g.weights.reserve(params.weights.size());
    g.biases.reserve(params.biases.size());
    for (std::size_t l = 0; l < params.weights.size(); ++l) {
        g.weights.push_back(Eigen::MatrixXd::Zero(params.weights[l].rows(), params.weights[l].cols()));
        g.biases.push_back(Eigen::VectorXd::Zero(params.biases[l].size()));
    }
    return g;
}

ForwardCache mlp_forward_batch(const MlpParameters& params, const Eigen::MatrixXd& inputs) {
    check_input(params, inputs);
    ForwardCache cache;
    cache.activations.reserve(params.num_layers() + 1);
    cache.activations.push_back(inputs);
    for (std::size_t l = 0; l < params.num_layers(); ++l) {
        Eigen::MatrixXd z = params.weights[l] * cache.activations.back();
        z.colwise() += params.biases[l];
        apply_activation(params.activations[l], z);
        cache.activations.push_back(std::move(z));
    }
    return cache;
}

ForwardResult mlp_forward(const MlpParameters& params, const Eigen::VectorXd& input) {
    ForwardResult result;
    result.cache = mlp_forward_batch(params, input);
    result.output = result.cache.output().col(0);
    return result;
}

Eigen::MatrixXd mlp_predict(const MlpParameters& params, const Eigen::MatrixXd& inputs) {
    check_input(params, inputs);
    Eigen::MatrixXd a = inputs;
    for (std::size_t l = 0; l < params.num_layers(); ++l) {
        Eigen::MatrixXd z = params.weights[l] * a;
        z.colwise() += params.biases[l];
        apply_activation(params.activations[l], z);
        a = std::move(z);
    }
    return a;
}

BackwardResult mlp_backward(const MlpParameters& params, const ForwardCache& cache,
                            const Eigen::MatrixXd& output_gradient) {
    const std::size_t layers = params.num_layers();
    if (cache.activations.size() != layers + 1) {
        throw InvalidState("forward cache depth does not match the network");
    }
    const Eigen::Index batch = cache.activations.front().cols();
    for (std::size_t l = 0; l <= layers; ++l) {
        if (cache.activations[l].rows() != params.layer_sizes[l] || cache.activations[l].cols() != batch) {
            throw InvalidState("forward cache layer " + std::to_string(l) + " does not match the network");
        }
    }
    if (output_gradient.rows() != params.output_size() || output_gradient.cols() != batch) {
        throw InvalidInput("output gradient shape does not match the cached batch");
    }

    BackwardResult result;
    result.parameters.weights.resize(layers);
    result.parameters.biases.resize(layers);
    Eigen::MatrixXd delta = output_gradient;
    for (std::size_t l = layers; l-- > 0;) {
        apply_derivative(params.activations[l], cache.activations[l + 1], delta);
        result.parameters.weights[l].noalias() = delta * cache.activations[l].transpose();
        result.parameters.biases[l] = delta.rowwise().sum();
        Eigen::MatrixXd upstream = params.weights[l].transpose() * delta;
        delta = std::move(upstream);
    }
    result.input_gradient = std::move(delta);
    return result;
}

}  // namespace camarl::neural
