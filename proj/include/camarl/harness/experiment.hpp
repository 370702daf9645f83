#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "camarl/harness/config.hpp"

namespace camarl::harness {

// Independent generators per run, each seeded from (seed, stream id), so that
// evaluation and initialization never shift the training draws.
struct RunStreams {
    std::mt19937_64 exploration;
    std::mt19937_64 sampling;
    std::mt19937_64 initialization;
    std::mt19937_64 evaluation;

    static RunStreams from_seed(std::uint64_t seed);
};

struct RunOptions {
    bool write_checkpoint = true;
    long log_every_episodes = 0;  // 0 disables progress lines
    std::function<void(const std::string&)> log;
};

struct RunArtifacts {
    std::uint64_t seed = 0;
    std::filesystem::path directory;
    long episodes_completed = 0;
};

std::filesystem::path seed_directory(const ExperimentConfig& config, std::uint64_t seed);

// Validates the config and creates every seed directory; throws ConfigError
// when the config is invalid or the output location is not writable.
void prepare_output(const ExperimentConfig& config);

// One seed: config.json, metrics.csv, timing.csv, trajectories_eval.csv,
// trajectories_final.csv and checkpoint/ under seed_directory().
RunArtifacts run_seed(const ExperimentConfig& config, std::uint64_t seed, const RunOptions& options = {});

// Every seed in turn; all configuration checks happen before the first episode.
std::vector<RunArtifacts> run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

}  // namespace camarl::harness
