#include "camarl/neural/optim.hpp"

#include <cmath>
#include <string>

#include "camarl/errors.hpp"

namespace camarl::neural {

namespace {

void require_same_architecture(const MlpParameters& target, const MlpParameters& source) {
    if (!target.same_architecture(source)) {
        throw InvalidInput("target and source networks have different architectures");
    }
}

void require_matching_shapes(const MlpParameters& params, const MlpGradients& grads, const char* what) {
    if (grads.weights.size() != params.weights.size() || grads.biases.size() != params.biases.size()) {
        throw InvalidInput(std::string(what) + " layer count does not match parameters");
    }
    for (std::size_t l = 0; l < params.weights.size(); ++l) {
        if (grads.weights[l].rows() != params.weights[l].rows() ||
            grads.weights[l].cols() != params.weights[l].cols() ||
            grads.biases[l].size() != params.biases[l].size()) {
            throw InvalidInput(std::string(what) + " layer " + std::to_string(l) + " has the wrong shape");
        }
    }
}

}  // namespace

AdamState AdamState::create(const MlpParameters& params, const AdamConfig& config) {
    if (!(config.learning_rate > 0.0) || !(config.beta1 > 0.0 && config.beta1 < 1.0) ||
        !(config.beta2 > 0.0 && config.beta2 < 1.0) || !(config.epsilon > 0.0)) {
        throw InvalidInput("invalid Adam hyperparameters");
    }
    AdamState state;
    state.first_moment = MlpGradients::zeros_like(params);
    state.second_moment = MlpGradients::zeros_like(params);
    state.config = config;
    return state;
}

void adam_step(AdamState& state, MlpParameters& params, const MlpGradients& grads) {
    require_matching_shapes(params, grads, "gradient");
    require_matching_shapes(params, state.first_moment, "first moment");
    require_matching_shapes(params, state.second_moment, "second moment");
    for (std::size_t l = 0; l < grads.weights.size(); ++l) {
        if (!grads.weights[l].allFinite() || !grads.biases[l].allFinite()) {
            throw NumericError("non-finite gradient in layer " + std::to_string(l), l);
        }
    }

    ++state.step_count;
    const auto& cfg = state.config;
    const double t = static_cast<double>(state.step_count);
    const double correction1 = 1.0 - std::pow(cfg.beta1, t);
    const double correction2 = 1.0 - std::pow(cfg.beta2, t);

    auto update = [&](auto& p, auto& m, auto& v, const auto& g) {
        m = cfg.beta1 * m + (1.0 - cfg.beta1) * g;
        v = cfg.beta2 * v + (1.0 - cfg.beta2) * g.cwiseProduct(g);
        p.array() -= cfg.learning_rate * (m.array() / correction1) /
                     ((v.array() / correction2).sqrt() + cfg.epsilon);
    };
    for (std::size_t l = 0; l < grads.weights.size(); ++l) {
        update(params.weights[l], state.first_moment.weights[l], state.second_moment.weights[l],
               grads.weights[l]);
        update(params.biases[l], state.first_moment.biases[l], state.second_moment.biases[l],
               grads.biases[l]);
    }
}

void hard_sync(MlpParameters& target, const MlpParameters& source) {
    require_same_architecture(target, source);
    target = source;
}

void soft_update(MlpParameters& target, const MlpParameters& source, double tau) {
    if (!(tau >= 0.0 && tau <= 1.0)) throw InvalidInput("soft update factor must lie in [0, 1]");
    require_same_architecture(target, source);
    for (std::size_t l = 0; l < target.weights.size(); ++l) {
        target.weights[l] = (1.0 - tau) * target.weights[l] + tau * source.weights[l];
        target.biases[l] = (1.0 - tau) * target.biases[l] + tau * source.biases[l];
    }
}

}  // namespace camarl::neural
