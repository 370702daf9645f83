#pragma once

#include <optional>
#include <random>
#include <span>
#include <vector>

#include "camarl/learners/config.hpp"
#include "camarl/learners/replay_memory.hpp"
#include "camarl/neural/optim.hpp"
#include "camarl/relnet/relational_network.hpp"

namespace camarl::learners {

// Per-agent Q-networks (IDQN / VDN / CA-VDN share this learner; the mixing
// mode and graph passed to the train step select the variant).
class DiscreteLearner {
public:
    DiscreteLearner(int n_agents, int obs_size, int n_actions, LearnerConfig config, std::mt19937_64& init_rng);

    int n_agents() const { return static_cast<int>(prediction_.size()); }
    int obs_size() const { return obs_size_; }
    int n_actions() const { return n_actions_; }
    const LearnerConfig& config() const { return config_; }

    std::vector<neural::MlpParameters>& prediction_nets() { return prediction_; }
    const std::vector<neural::MlpParameters>& prediction_nets() const { return prediction_; }
    std::vector<neural::MlpParameters>& target_nets() { return target_; }
    const std::vector<neural::MlpParameters>& target_nets() const { return target_; }
    std::vector<neural::AdamState>& optimizers() { return optimizers_; }
    const std::vector<neural::AdamState>& optimizers() const { return optimizers_; }

    void sync_targets();

private:
    int obs_size_;
    int n_actions_;
    LearnerConfig config_;
    std::vector<neural::MlpParameters> prediction_;
    std::vector<neural::MlpParameters> target_;
    std::vector<neural::AdamState> optimizers_;
};

// Index of the largest entry, lowest index on ties. Throws NumericError on non-finite input.
int greedy_action(const Eigen::VectorXd& q_values);

// Per agent: with probability epsilon a uniform action, otherwise the greedy one.
// observations: obs_size x n_agents.
std::vector<int> select_actions_discrete(std::span<const neural::MlpParameters> nets,
                                         const Eigen::MatrixXd& observations, double epsilon, std::mt19937_64& rng);

// One gradient step on a given batch; returns the pre-update loss.
double train_on_batch_discrete(DiscreteLearner& learner, std::span<const DiscreteTransition* const> batch,
                               const relnet::RelationalNetwork& graph, relnet::MixingMode mode);

// Samples batch_size transitions uniformly and trains on them. Returns nullopt
// (no update) while the memory holds fewer than batch_size entries.
std::optional<double> train_step_discrete(DiscreteLearner& learner, const ReplayMemory<DiscreteTransition>& memory,
                                          const relnet::RelationalNetwork& graph, relnet::MixingMode mode,
                                          std::mt19937_64& sampling_rng);

}  // namespace camarl::learners
