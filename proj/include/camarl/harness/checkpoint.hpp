#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "camarl/harness/config.hpp"
#include "camarl/harness/evaluation.hpp"
#include "camarl/learners/continuous.hpp"
#include "camarl/learners/discrete.hpp"

namespace camarl::harness {

// Extra run state stored next to the networks.
struct CheckpointInfo {
    std::uint64_t seed = 0;
    long episodes_completed = 0;
    long epsilon_reset_episode = 0;
    std::string active_graph;
    bool malfunction_active = false;
    std::string exploration_rng;  // textual engine states
    std::string sampling_rng;
    std::string evaluation_rng;
};

// Directory layout: manifest.json plus agent_<i>.mlp and agent_<i>_target.mlp.
void save_checkpoint(const std::filesystem::path& dir, const ExperimentConfig& config, const CheckpointInfo& info,
                     const learners::DiscreteLearner& learner);
void save_checkpoint(const std::filesystem::path& dir, const ExperimentConfig& config, const CheckpointInfo& info,
                     const learners::ContinuousLearner& learner);

struct LoadedCheckpoint {
    ExperimentConfig config;
    CheckpointInfo info;
    std::optional<learners::DiscreteLearner> discrete;
    std::optional<learners::ContinuousLearner> continuous;
};

// Throws InvalidInput on a missing or inconsistent checkpoint.
LoadedCheckpoint load_checkpoint(const std::filesystem::path& dir);

// Greedy evaluation in the environment the checkpoint was trained in last,
// including its malfunction if one was active.
EvaluationResult evaluate_checkpoint(const LoadedCheckpoint& checkpoint, int n_episodes);

}  // namespace camarl::harness
