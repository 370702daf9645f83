#pragma once

#include <cstdint>

#include "camarl/neural/mlp.hpp"

namespace camarl::neural {

struct AdamConfig {
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

struct AdamState {
    MlpGradients first_moment;
    MlpGradients second_moment;
    std::int64_t step_count = 0;
    AdamConfig config;

    static AdamState create(const MlpParameters& params, const AdamConfig& config = {});
};

// Applies one bias-corrected Adam update. Throws NumericError naming the first
// layer holding a non-finite gradient; nothing is modified in that case.
void adam_step(AdamState& state, MlpParameters& params, const MlpGradients& grads);

// target <- source. Throws InvalidInput on architecture mismatch.
void hard_sync(MlpParameters& target, const MlpParameters& source);

// target <- (1 - tau) * target + tau * source.
void soft_update(MlpParameters& target, const MlpParameters& source, double tau);

}  // namespace camarl::neural
