#pragma once

#include <cstddef>
#include <vector>

#include "camarl/neural/mlp.hpp"
#include "camarl/relnet/relational_network.hpp"

namespace camarl::learners {

struct EpsilonSchedule {
    double start = 1.0;
    double end = 0.05;
    int horizon = 2000;  // episodes
};

// Linear decay from start to end over `horizon` episodes counted from the most
// recent reset (`reset_episode`); constant at `end` afterwards.
double epsilon_value(const EpsilonSchedule& schedule, long episode, long reset_episode = 0);

struct LearnerConfig {
    double gamma = 0.99;
    int batch_size = 32;
    int update_iterations = 10;
    int target_sync_period = 200;  // episodes, hard sync (discrete)
    double soft_tau = 0.01;        // per training step (continuous)
    int train_every_steps = 10;    // environment steps between updates (continuous)
    EpsilonSchedule epsilon;
    double learning_rate = 1e-3;
    relnet::MixingMode mixing_mode = relnet::MixingMode::reward_relational;
    std::vector<int> hidden_layers{128, 128};
    neural::Activation hidden_activation = neural::Activation::relu;
    std::size_t replay_capacity = 50'000;
    int sample_count = 64;  // candidate actions per sampled argmax (continuous)
    int basis_degree = 2;   // polynomial Q-functional degree (continuous)

    // Grid-world defaults: 2x128 ReLU, batch 32, 10 iterations per episode,
    // hard target sync every 200 episodes, 50k memory.
    static LearnerConfig discrete_defaults();
    // Crawler defaults: 3x256 tanh, batch 512 every 10 steps, soft tau 0.01, 500k memory.
    static LearnerConfig continuous_defaults();
};

// Throws InvalidInput on out-of-domain values.
void validate(const LearnerConfig& config);

}  // namespace camarl::learners
