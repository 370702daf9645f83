#include "camarl/harness/checkpoint.hpp"

#include <fstream>
#include <sstream>

#include "camarl/errors.hpp"
#include "camarl/neural/checkpoint.hpp"

namespace camarl::harness {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json manifest(const ExperimentConfig& config, const CheckpointInfo& info, int n_agents, int obs_size) {
    return {{"format", "camarl-checkpoint 1"},
            {"learner", to_string(config.learner)},
            {"mixing_mode", relnet::to_string(mixing_mode_for(config.learner))},
            {"n_agents", n_agents},
            {"obs_size", obs_size},
            {"seed", info.seed},
            {"episodes_completed", info.episodes_completed},
            {"epsilon_reset_episode", info.epsilon_reset_episode},
            {"active_graph", info.active_graph},
            {"malfunction_active", info.malfunction_active},
            {"rng", {{"exploration", info.exploration_rng},
                     {"sampling", info.sampling_rng},
                     {"evaluation", info.evaluation_rng}}},
            {"config", to_json(config)}};
}

void write_manifest(const fs::path& dir, const json& m) {
    std::ofstream out(dir / "manifest.json");
    out << m.dump(2) << '\n';
    if (!out) throw InvalidState("cannot write " + (dir / "manifest.json").string());
}

fs::path net_path(const fs::path& dir, int agent, bool target) {
    return dir / ("agent_" + std::to_string(agent) + (target ? "_target" : "") + ".mlp");
}

}  // namespace

void save_checkpoint(const fs::path& dir, const ExperimentConfig& config, const CheckpointInfo& info,
                     const learners::DiscreteLearner& learner) {
    fs::create_directories(dir);
    for (int i = 0; i < learner.n_agents(); ++i) {
        neural::save_parameters(learner.prediction_nets()[i], net_path(dir, i, false));
        neural::save_parameters(learner.target_nets()[i], net_path(dir, i, true));
    }
    write_manifest(dir, manifest(config, info, learner.n_agents(), learner.obs_size()));
}

void save_checkpoint(const fs::path& dir, const ExperimentConfig& config, const CheckpointInfo& info,
                     const learners::ContinuousLearner& learner) {
    fs::create_directories(dir);
    for (int i = 0; i < learner.n_agents(); ++i) {
        neural::save_parameters(learner.heads()[i].network, net_path(dir, i, false));
        neural::save_parameters(learner.target_nets()[i], net_path(dir, i, true));
    }
    write_manifest(dir, manifest(config, info, learner.n_agents(), learner.obs_size()));
}

LoadedCheckpoint load_checkpoint(const fs::path& dir) {
    std::ifstream in(dir / "manifest.json");
    if (!in) throw InvalidInput("no checkpoint manifest in " + dir.string());
    json m;
    LoadedCheckpoint loaded;
    try {
        in >> m;
        if (m.at("format") != "camarl-checkpoint 1") throw InvalidInput("unsupported checkpoint format");
        loaded.config = config_from_json(m.at("config"));
        auto& info = loaded.info;
        info.seed = m.at("seed").get<std::uint64_t>();
        info.episodes_completed = m.at("episodes_completed").get<long>();
        info.epsilon_reset_episode = m.at("epsilon_reset_episode").get<long>();
        info.active_graph = m.at("active_graph").get<std::string>();
        info.malfunction_active = m.at("malfunction_active").get<bool>();
        info.exploration_rng = m.at("rng").at("exploration").get<std::string>();
        info.sampling_rng = m.at("rng").at("sampling").get<std::string>();
        info.evaluation_rng = m.at("rng").at("evaluation").get<std::string>();
    } catch (const json::exception& e) {
        throw InvalidInput("malformed checkpoint manifest: " + std::string(e.what()));
    } catch (const ConfigError& e) {
        throw InvalidInput("checkpoint config: " + std::string(e.what()));
    }

    const auto& config = loaded.config;
    const int n = config.n_agents();
    const int obs = m.at("obs_size").get<int>();
    if (m.at("n_agents").get<int>() != n) throw InvalidInput("checkpoint agent count disagrees with its config");
    // The initial draw is discarded; every network is replaced from disk.
    std::mt19937_64 scratch(0);
    auto check = [](const neural::MlpParameters& loaded_net, const neural::MlpParameters& expected, int agent) {
        if (loaded_net.layer_sizes != expected.layer_sizes || loaded_net.activations != expected.activations) {
            throw InvalidInput("checkpoint network for agent " + std::to_string(agent) +
                               " does not match the configured architecture");
        }
    };
    if (is_discrete(config.learner)) {
        learners::DiscreteLearner learner(n, obs, envs::kGridActionCount, config.learner_config, scratch);
        for (int i = 0; i < n; ++i) {
            auto pred = neural::load_parameters(net_path(dir, i, false));
            auto target = neural::load_parameters(net_path(dir, i, true));
            check(pred, learner.prediction_nets()[i], i);
            check(target, learner.target_nets()[i], i);
            learner.prediction_nets()[i] = std::move(pred);
            learner.target_nets()[i] = std::move(target);
        }
        loaded.discrete.emplace(std::move(learner));
    } else {
        learners::ContinuousLearner learner(n, obs, envs::crawler::kActionDim, config.learner_config, scratch);
        for (int i = 0; i < n; ++i) {
            auto pred = neural::load_parameters(net_path(dir, i, false));
            auto target = neural::load_parameters(net_path(dir, i, true));
            check(pred, learner.heads()[i].network, i);
            check(target, learner.target_nets()[i], i);
            learner.heads()[i].network = std::move(pred);
            learner.target_nets()[i] = std::move(target);
        }
        loaded.continuous.emplace(std::move(learner));
    }
    return loaded;
}

EvaluationResult evaluate_checkpoint(const LoadedCheckpoint& checkpoint, int n_episodes) {
    const auto& config = checkpoint.config;
    std::optional<envs::MalfunctionSpec> malfunction;
    if (checkpoint.info.malfunction_active && config.malfunction) malfunction = config.malfunction->spec;
    if (checkpoint.discrete) {
        envs::GridEnvironment env(config.grid);
        env.set_malfunction(malfunction);
        return evaluate_greedy(env, *checkpoint.discrete, n_episodes);
    }
    envs::CrawlerEnvironment env(config.crawler_agents);
    env.set_malfunction(malfunction);
    std::mt19937_64 rng;
    std::istringstream state(checkpoint.info.evaluation_rng);
    state >> rng;
    if (!state) throw InvalidInput("malformed evaluation rng state in checkpoint");
    return evaluate_greedy(env, *checkpoint.continuous, n_episodes, rng);
}

}  // namespace camarl::harness
