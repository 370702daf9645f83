#include "camarl/learners/config.hpp"

#include <algorithm>

#include "camarl/errors.hpp"

namespace camarl::learners {

double epsilon_value(const EpsilonSchedule& schedule, long episode, long reset_episode) {
    const long elapsed = std::max(0L, episode - reset_episode);
    if (schedule.horizon <= 0 || elapsed >= schedule.horizon) return schedule.end;
    const double fraction = static_cast<double>(elapsed) / static_cast<double>(schedule.horizon);
    return schedule.start + (schedule.end - schedule.start) * fraction;
}

LearnerConfig LearnerConfig::discrete_defaults() { return LearnerConfig{}; }

LearnerConfig LearnerConfig::continuous_defaults() {
    LearnerConfig config;
    config.batch_size = 512;
    config.update_iterations = 1;
    config.epsilon.horizon = 10'000;
    config.learning_rate = 1e-4;
    config.mixing_mode = relnet::MixingMode::value_relational;
    config.hidden_layers = {256, 256, 256};
    config.hidden_activation = neural::Activation::tanh;
    config.replay_capacity = 500'000;
    return config;
}

void validate(const LearnerConfig& config) {
    if (!(config.gamma >= 0.0 && config.gamma < 1.0)) throw InvalidInput("gamma must lie in [0, 1)");
    if (config.batch_size < 1) throw InvalidInput("batch_size must be at least 1");
    if (config.update_iterations < 1) throw InvalidInput("update_iterations must be at least 1");
    if (config.target_sync_period < 1) throw InvalidInput("target_sync_period must be at least 1");
    if (!(config.soft_tau >= 0.0 && config.soft_tau <= 1.0)) throw InvalidInput("soft_tau must lie in [0, 1]");
    if (config.train_every_steps < 1) throw InvalidInput("train_every_steps must be at least 1");
    const auto& e = config.epsilon;
    if (!(e.start >= 0.0 && e.start <= 1.0 && e.end >= 0.0 && e.end <= 1.0)) {
        throw InvalidInput("epsilon values must lie in [0, 1]");
    }
    if (!(config.learning_rate > 0.0)) throw InvalidInput("learning_rate must be positive");
    if (std::any_of(config.hidden_layers.begin(), config.hidden_layers.end(), [](int s) { return s <= 0; })) {
        throw InvalidInput("hidden layer sizes must be positive");
    }
    if (config.replay_capacity == 0) throw InvalidInput("replay_capacity must be positive");
    if (config.sample_count < 1) throw InvalidInput("sample_count must be at least 1");
    if (config.basis_degree < 1) throw InvalidInput("basis_degree must be at least 1");
}

}  // namespace camarl::learners
