#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "camarl/envs/gridworld.hpp"
#include "camarl/envs/malfunction.hpp"
#include "camarl/learners/config.hpp"
#include "camarl/relnet/relational_network.hpp"

namespace camarl::harness {

enum class EnvironmentKind { gridworld, crawler };
enum class LearnerKind { idqn, vdn, ca_vdn, iqf, mqf, ca_mqf };

std::string to_string(EnvironmentKind kind);
std::string to_string(LearnerKind kind);
LearnerKind learner_kind_from_string(const std::string& name);

bool is_discrete(LearnerKind kind);
// idqn/iqf -> independent, vdn/ca_vdn -> reward_relational, mqf/ca_mqf -> value_relational.
relnet::MixingMode mixing_mode_for(LearnerKind kind);
// Only the CA variants follow the relational schedule; the rest mix through the identity graph.
bool uses_relational_schedule(LearnerKind kind);

struct ScheduleEntry {
    long start_episode = 0;
    std::string graph;
};

struct MalfunctionEvent {
    long episode = 0;
    envs::MalfunctionSpec spec;
    bool reset_epsilon = true;
};

struct EvaluationConfig {
    long every_episodes = 50;  // grid cadence, in training episodes
    long every_steps = 0;      // crawler cadence, in environment steps (0 = use every_episodes)
    int episodes = 10;
    int final_episodes = 100;
};

struct ExperimentConfig {
    EnvironmentKind environment = EnvironmentKind::gridworld;
    envs::GridConfig grid = envs::GridConfig::default_layout();
    int crawler_agents = 4;
    LearnerKind learner = LearnerKind::ca_vdn;
    learners::LearnerConfig learner_config = learners::LearnerConfig::discrete_defaults();
    std::vector<ScheduleEntry> relational_schedule;
    std::vector<relnet::RelationalNetwork> graphs;  // definitions beyond the built-in labels
    std::optional<MalfunctionEvent> malfunction;
    long total_episodes = 10'000;
    EvaluationConfig evaluation;
    std::vector<std::uint64_t> seeds{0};
    std::filesystem::path output_dir = "runs/experiment";

    int n_agents() const;

    // Grid protocol: green immobilized at episode 5000 of 10000 with an epsilon
    // reset; CA-VDN switches from the identity graph to focus_3.
    static ExperimentConfig grid_protocol(LearnerKind learner);
    // Crawler protocol: leg 0 loses torque at episode 30000 of 60000; CA-MQF
    // switches from all_ones to drop_0.
    static ExperimentConfig crawler_protocol(LearnerKind learner);
};

// Throws ConfigError describing the first problem found.
void validate(const ExperimentConfig& config);

// Graph in force at `episode` for this learner (identity for non-CA learners).
relnet::RelationalNetwork active_graph(const ExperimentConfig& config, long episode);
relnet::RelationalNetwork resolve_graph(const ExperimentConfig& config, const std::string& label);

nlohmann::json to_json(const ExperimentConfig& config);
// Missing fields take the defaults of the environment's protocol. Throws ConfigError.
ExperimentConfig config_from_json(const nlohmann::json& j);
// Relative graph file paths resolve against base_dir.
ExperimentConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
ExperimentConfig load_config(const std::filesystem::path& path);

nlohmann::json to_json(const envs::GridConfig& grid);
envs::GridConfig grid_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const learners::LearnerConfig& config);

}  // namespace camarl::harness
