#pragma once

#include <optional>
#include <random>
#include <span>
#include <vector>

#include "camarl/learners/config.hpp"
#include "camarl/learners/functional.hpp"
#include "camarl/learners/replay_memory.hpp"
#include "camarl/neural/optim.hpp"
#include "camarl/relnet/relational_network.hpp"

namespace camarl::learners {

inline constexpr double kExplorationHalfWidth = 0.2;

// Per-agent Q-functionals (IQF / MQF / CA-MQF).
class ContinuousLearner {
public:
    ContinuousLearner(int n_agents, int obs_size, int action_dim, LearnerConfig config, std::mt19937_64& init_rng);

    int n_agents() const { return static_cast<int>(heads_.size()); }
    int obs_size() const { return obs_size_; }
    int action_dim() const { return action_dim_; }
    const LearnerConfig& config() const { return config_; }

    std::vector<FunctionalHead>& heads() { return heads_; }
    const std::vector<FunctionalHead>& heads() const { return heads_; }
    std::vector<neural::MlpParameters>& target_nets() { return target_; }
    const std::vector<neural::MlpParameters>& target_nets() const { return target_; }
    std::vector<neural::AdamState>& optimizers() { return optimizers_; }
    const std::vector<neural::AdamState>& optimizers() const { return optimizers_; }

    void soft_update_targets();

private:
    int obs_size_;
    int action_dim_;
    LearnerConfig config_;
    std::vector<FunctionalHead> heads_;
    std::vector<neural::MlpParameters> target_;
    std::vector<neural::AdamState> optimizers_;
};

// Per agent: emit coefficients, score `sample_count` uniform candidates and keep
// the best; with probability epsilon perturb it by uniform noise of half-width
// 0.2 and clamp back to [-1, 1]. Returns action_dim x n_agents.
Eigen::MatrixXd select_actions_continuous(std::span<const FunctionalHead> heads, const Eigen::MatrixXd& observations,
                                          double epsilon, int sample_count, std::mt19937_64& rng);

// Maximum over `candidates` (action_dim x K) of the functional described by
// each coefficient column; returns one value per column of `coefficients`.
Eigen::RowVectorXd sampled_max(const PolynomialBasis& basis, const Eigen::MatrixXd& coefficients,
                               const Eigen::MatrixXd& candidates);

// One gradient step on a given batch; the target max uses `sample_count`
// candidates per agent. Returns the pre-update loss. Targets are not touched.
double train_on_batch_continuous(ContinuousLearner& learner, std::span<const ContinuousTransition* const> batch,
                                 const relnet::RelationalNetwork& graph, relnet::MixingMode mode, int sample_count,
                                 std::mt19937_64& sampling_rng);

// Samples a batch, trains, then soft-updates every target network.
std::optional<double> train_step_continuous(ContinuousLearner& learner,
                                            const ReplayMemory<ContinuousTransition>& memory,
                                            const relnet::RelationalNetwork& graph, relnet::MixingMode mode,
                                            int sample_count, std::mt19937_64& sampling_rng);

}  // namespace camarl::learners
