#include "camarl/harness/config.hpp"

#include <fstream>
#include <set>

#include "camarl/errors.hpp"

namespace camarl::harness {

using nlohmann::json;

std::string to_string(EnvironmentKind kind) { return kind == EnvironmentKind::gridworld ? "gridworld" : "crawler"; }

std::string to_string(LearnerKind kind) {
    switch (kind) {
    case LearnerKind::idqn:
        return "idqn";
    case LearnerKind::vdn:
        return "vdn";
    case LearnerKind::ca_vdn:
        return "ca_vdn";
    case LearnerKind::iqf:
        return "iqf";
    case LearnerKind::mqf:
        return "mqf";
    case LearnerKind::ca_mqf:
        return "ca_mqf";
    }
    return "idqn";
}

LearnerKind learner_kind_from_string(const std::string& name) {
    for (auto kind : {LearnerKind::idqn, LearnerKind::vdn, LearnerKind::ca_vdn, LearnerKind::iqf, LearnerKind::mqf,
                      LearnerKind::ca_mqf}) {
        if (to_string(kind) == name) return kind;
    }
    throw ConfigError("unknown learner '" + name + "'");
}

bool is_discrete(LearnerKind kind) {
    return kind == LearnerKind::idqn || kind == LearnerKind::vdn || kind == LearnerKind::ca_vdn;
}

relnet::MixingMode mixing_mode_for(LearnerKind kind) {
    switch (kind) {
    case LearnerKind::idqn:
    case LearnerKind::iqf:
        return relnet::MixingMode::independent;
    case LearnerKind::vdn:
    case LearnerKind::ca_vdn:
        return relnet::MixingMode::reward_relational;
    case LearnerKind::mqf:
    case LearnerKind::ca_mqf:
        return relnet::MixingMode::value_relational;
    }
    return relnet::MixingMode::independent;
}

bool uses_relational_schedule(LearnerKind kind) { return kind == LearnerKind::ca_vdn || kind == LearnerKind::ca_mqf; }

int ExperimentConfig::n_agents() const {
    return environment == EnvironmentKind::gridworld ? grid.n_agents() : crawler_agents;
}

ExperimentConfig ExperimentConfig::grid_protocol(LearnerKind learner) {
    ExperimentConfig config;
    config.environment = EnvironmentKind::gridworld;
    config.grid = envs::GridConfig::default_layout();
    config.learner = learner;
    config.learner_config = learners::LearnerConfig::discrete_defaults();
    config.learner_config.mixing_mode = mixing_mode_for(learner);
    config.relational_schedule = {{0, "identity"}, {5000, "focus_" + std::to_string(envs::kGreenAgent)}};
    config.malfunction = MalfunctionEvent{5000, {envs::kGreenAgent, envs::MalfunctionKind::immobilize_discrete}, true};
    config.total_episodes = 10'000;
    config.evaluation = {50, 0, 10, 100};
    config.seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    config.output_dir = "runs/grid_" + to_string(learner);
    return config;
}

ExperimentConfig ExperimentConfig::crawler_protocol(LearnerKind learner) {
    ExperimentConfig config;
    config.environment = EnvironmentKind::crawler;
    config.crawler_agents = 4;
    config.learner = learner;
    config.learner_config = learners::LearnerConfig::continuous_defaults();
    config.learner_config.mixing_mode = mixing_mode_for(learner);
    config.relational_schedule = {{0, "all_ones"}, {30'000, "drop_0"}};
    config.malfunction = MalfunctionEvent{30'000, {0, envs::MalfunctionKind::zero_torque_continuous}, true};
    config.total_episodes = 60'000;
    config.evaluation = {0, 1000, 100, 1000};
    config.seeds = {0, 1, 2};
    config.output_dir = "runs/crawler_" + to_string(learner);
    return config;
}

relnet::RelationalNetwork resolve_graph(const ExperimentConfig& config, const std::string& label) {
    for (const auto& g : config.graphs) {
        if (g.label() == label) return g;
    }
    relnet::RelationalNetwork net = relnet::RelationalNetwork::identity(1);
    try {
        if (relnet::builtin_graph(label, config.n_agents(), net)) return net;
    } catch (const InvalidInput& e) {
        throw ConfigError("graph '" + label + "': " + e.what());
    }
    throw ConfigError("relational graph '" + label + "' is neither defined nor built in");
}

relnet::RelationalNetwork active_graph(const ExperimentConfig& config, long episode) {
    if (!uses_relational_schedule(config.learner)) return relnet::RelationalNetwork::identity(config.n_agents());
    const ScheduleEntry* current = nullptr;
    for (const auto& entry : config.relational_schedule) {
        if (entry.start_episode <= episode) current = &entry;
    }
    if (current == nullptr) throw ConfigError("no relational graph scheduled for episode " + std::to_string(episode));
    return resolve_graph(config, current->graph);
}

void validate(const ExperimentConfig& config) {
    const bool grid = config.environment == EnvironmentKind::gridworld;
    if (grid != is_discrete(config.learner)) {
        throw ConfigError("learner '" + to_string(config.learner) + "' does not fit environment '" +
                          to_string(config.environment) + "'");
    }
    try {
        if (grid) {
            envs::validate(config.grid);
        } else if (config.crawler_agents != envs::crawler::kAgents) {
            throw ConfigError("the crawler supports exactly 4 agents");
        }
        learners::validate(config.learner_config);
    } catch (const InvalidInput& e) {
        throw ConfigError(e.what());
    }
    if (config.learner_config.mixing_mode != mixing_mode_for(config.learner)) {
        throw ConfigError("mixing mode '" + relnet::to_string(config.learner_config.mixing_mode) +
                          "' contradicts learner '" + to_string(config.learner) + "'");
    }
    if (config.total_episodes <= 0) throw ConfigError("total_episodes must be positive");
    for (std::size_t i = 1; i < config.relational_schedule.size(); ++i) {
        if (config.relational_schedule[i].start_episode <= config.relational_schedule[i - 1].start_episode) {
            throw ConfigError("relational schedule episodes must be strictly increasing");
        }
    }
    if (uses_relational_schedule(config.learner)) {
        if (config.relational_schedule.empty() || config.relational_schedule.front().start_episode != 0) {
            throw ConfigError("CA learners need a relational schedule starting at episode 0");
        }
    }
    for (const auto& g : config.graphs) {
        if (g.n_agents() != config.n_agents()) {
            throw ConfigError("graph '" + g.label() + "' has " + std::to_string(g.n_agents()) + " agents, expected " +
                              std::to_string(config.n_agents()));
        }
    }
    for (const auto& entry : config.relational_schedule) {
        if (entry.start_episode < 0) throw ConfigError("schedule episodes must be non-negative");
        resolve_graph(config, entry.graph);
    }
    if (config.malfunction) {
        const auto& m = *config.malfunction;
        if (m.episode < 0 || m.episode >= config.total_episodes) {
            throw ConfigError("malfunction episode " + std::to_string(m.episode) + " must lie in [0, total_episodes)");
        }
        if (m.spec.agent_index < 0 || m.spec.agent_index >= config.n_agents()) {
            throw ConfigError("malfunction agent index out of range");
        }
        const auto expected =
            grid ? envs::MalfunctionKind::immobilize_discrete : envs::MalfunctionKind::zero_torque_continuous;
        if (m.spec.kind != expected) throw ConfigError("malfunction kind does not fit the environment");
    }
    const auto& ev = config.evaluation;
    if (ev.every_episodes < 0 || ev.every_steps < 0 || (ev.every_episodes == 0 && ev.every_steps == 0)) {
        throw ConfigError("evaluation cadence must be positive");
    }
    if (ev.episodes < 1 || ev.final_episodes < 1) throw ConfigError("evaluation episode counts must be positive");
    if (config.seeds.empty()) throw ConfigError("at least one seed is required");
    if (std::set<std::uint64_t>(config.seeds.begin(), config.seeds.end()).size() != config.seeds.size()) {
        throw ConfigError("seeds must be distinct");
    }
    if (config.output_dir.empty()) throw ConfigError("output_dir must be set");
}

json to_json(const envs::GridConfig& grid) {
    auto cells = [](const std::vector<envs::Cell>& cs) {
        json a = json::array();
        for (const auto& c : cs) a.push_back({c.x, c.y});
        return a;
    };
    return {{"width", grid.width},
            {"height", grid.height},
            {"agent_starts", cells(grid.agent_starts)},
            {"resource_cells", cells(grid.resource_cells)},
            {"max_steps", grid.max_steps},
            {"consume_reward", grid.consume_reward},
            {"step_penalty_per_resource", grid.step_penalty_per_resource}};
}

json to_json(const learners::LearnerConfig& c) {
    return {{"gamma", c.gamma},
            {"batch_size", c.batch_size},
            {"update_iterations", c.update_iterations},
            {"target_sync_period", c.target_sync_period},
            {"soft_tau", c.soft_tau},
            {"train_every_steps", c.train_every_steps},
            {"epsilon", {{"start", c.epsilon.start}, {"end", c.epsilon.end}, {"horizon", c.epsilon.horizon}}},
            {"learning_rate", c.learning_rate},
            {"mixing_mode", relnet::to_string(c.mixing_mode)},
            {"hidden_layers", c.hidden_layers},
            {"hidden_activation", std::string(neural::to_string(c.hidden_activation))},
            {"replay_capacity", c.replay_capacity},
            {"sample_count", c.sample_count},
            {"basis_degree", c.basis_degree}};
}

json to_json(const ExperimentConfig& config) {
    json j;
    j["environment"] = to_string(config.environment);
    if (config.environment == EnvironmentKind::gridworld) {
        j["grid"] = to_json(config.grid);
    } else {
        j["crawler_agents"] = config.crawler_agents;
    }
    j["learner"] = to_string(config.learner);
    j["learner_config"] = to_json(config.learner_config);
    j["relational_schedule"] = json::array();
    for (const auto& e : config.relational_schedule) {
        j["relational_schedule"].push_back({{"start_episode", e.start_episode}, {"graph", e.graph}});
    }
    j["graphs"] = json::array();
    for (const auto& g : config.graphs) j["graphs"].push_back(relnet::to_json(g));
    if (config.malfunction) {
        const auto& m = *config.malfunction;
        j["malfunction"] = {{"episode", m.episode},
                            {"agent_index", m.spec.agent_index},
                            {"kind", envs::to_string(m.spec.kind)},
                            {"reset_epsilon", m.reset_epsilon}};
    } else {
        j["malfunction"] = nullptr;
    }
    j["total_episodes"] = config.total_episodes;
    j["evaluation"] = {{"every_episodes", config.evaluation.every_episodes},
                       {"every_steps", config.evaluation.every_steps},
                       {"episodes", config.evaluation.episodes},
                       {"final_episodes", config.evaluation.final_episodes}};
    j["seeds"] = config.seeds;
    j["output_dir"] = config.output_dir.string();
    return j;
}

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* key : allowed) known = known || item.key() == key;
        if (!known) throw ConfigError("unknown field '" + item.key() + "' in " + where);
    }
}

template <typename T>
void read(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

std::vector<envs::Cell> read_cells(const json& a) {
    std::vector<envs::Cell> cells;
    for (const auto& c : a) {
        if (!c.is_array() || c.size() != 2) throw ConfigError("cells are [x, y] pairs");
        cells.push_back({c[0].get<int>(), c[1].get<int>()});
    }
    return cells;
}

void read_grid(const json& g, envs::GridConfig& grid) {
    reject_unknown(g,
                   {"width", "height", "agent_starts", "resource_cells", "max_steps", "consume_reward",
                    "step_penalty_per_resource"},
                   "grid");
    read(g, "width", grid.width);
    read(g, "height", grid.height);
    if (g.contains("agent_starts")) grid.agent_starts = read_cells(g.at("agent_starts"));
    if (g.contains("resource_cells")) grid.resource_cells = read_cells(g.at("resource_cells"));
    read(g, "max_steps", grid.max_steps);
    read(g, "consume_reward", grid.consume_reward);
    read(g, "step_penalty_per_resource", grid.step_penalty_per_resource);
}

void read_learner_config(const json& j, learners::LearnerConfig& c) {
    reject_unknown(j,
                   {"gamma", "batch_size", "update_iterations", "target_sync_period", "soft_tau", "train_every_steps",
                    "epsilon", "learning_rate", "mixing_mode", "hidden_layers", "hidden_activation", "replay_capacity",
                    "sample_count", "basis_degree"},
                   "learner_config");
    read(j, "gamma", c.gamma);
    read(j, "batch_size", c.batch_size);
    read(j, "update_iterations", c.update_iterations);
    read(j, "target_sync_period", c.target_sync_period);
    read(j, "soft_tau", c.soft_tau);
    read(j, "train_every_steps", c.train_every_steps);
    if (j.contains("epsilon")) {
        const auto& e = j.at("epsilon");
        reject_unknown(e, {"start", "end", "horizon"}, "learner_config.epsilon");
        read(e, "start", c.epsilon.start);
        read(e, "end", c.epsilon.end);
        read(e, "horizon", c.epsilon.horizon);
    }
    read(j, "learning_rate", c.learning_rate);
    if (j.contains("mixing_mode")) c.mixing_mode = relnet::mixing_mode_from_string(j.at("mixing_mode").get<std::string>());
    read(j, "hidden_layers", c.hidden_layers);
    if (j.contains("hidden_activation")) {
        c.hidden_activation = neural::activation_from_string(j.at("hidden_activation").get<std::string>());
    }
    read(j, "replay_capacity", c.replay_capacity);
    read(j, "sample_count", c.sample_count);
    read(j, "basis_degree", c.basis_degree);
}

ExperimentConfig parse(const json& j, const std::filesystem::path& base_dir) {
    reject_unknown(j,
                   {"environment", "grid", "crawler_agents", "learner", "learner_config", "relational_schedule",
                    "graphs", "malfunction", "total_episodes", "evaluation", "seeds", "output_dir"},
                   "experiment config");
    const std::string env = j.value("environment", std::string("gridworld"));
    if (env != "gridworld" && env != "crawler") throw ConfigError("unknown environment '" + env + "'");
    const LearnerKind learner = learner_kind_from_string(
        j.value("learner", std::string(env == "gridworld" ? "ca_vdn" : "ca_mqf")));
    ExperimentConfig config =
        env == "gridworld" ? ExperimentConfig::grid_protocol(learner) : ExperimentConfig::crawler_protocol(learner);

    if (j.contains("grid")) read_grid(j.at("grid"), config.grid);
    read(j, "crawler_agents", config.crawler_agents);
    if (j.contains("learner_config")) read_learner_config(j.at("learner_config"), config.learner_config);
    if (j.contains("relational_schedule")) {
        config.relational_schedule.clear();
        for (const auto& e : j.at("relational_schedule")) {
            reject_unknown(e, {"start_episode", "graph"}, "relational_schedule entry");
            config.relational_schedule.push_back({e.at("start_episode").get<long>(), e.at("graph").get<std::string>()});
        }
    }
    if (j.contains("graphs")) {
        for (const auto& g : j.at("graphs")) {
            if (g.contains("file")) {
                std::filesystem::path p = g.at("file").get<std::string>();
                if (p.is_relative()) p = base_dir / p;
                config.graphs.push_back(relnet::load_graph(p));
            } else {
                config.graphs.push_back(relnet::from_json(g));
            }
        }
    }
    if (j.contains("malfunction")) {
        const auto& m = j.at("malfunction");
        if (m.is_null()) {
            config.malfunction.reset();
        } else {
            reject_unknown(m, {"episode", "agent_index", "kind", "reset_epsilon"}, "malfunction");
            MalfunctionEvent event = config.malfunction.value_or(MalfunctionEvent{});
            read(m, "episode", event.episode);
            read(m, "agent_index", event.spec.agent_index);
            if (m.contains("kind")) event.spec.kind = envs::malfunction_kind_from_string(m.at("kind").get<std::string>());
            read(m, "reset_epsilon", event.reset_epsilon);
            config.malfunction = event;
        }
    }
    read(j, "total_episodes", config.total_episodes);
    if (j.contains("evaluation")) {
        const auto& e = j.at("evaluation");
        reject_unknown(e, {"every_episodes", "every_steps", "episodes", "final_episodes"}, "evaluation");
        read(e, "every_episodes", config.evaluation.every_episodes);
        read(e, "every_steps", config.evaluation.every_steps);
        read(e, "episodes", config.evaluation.episodes);
        read(e, "final_episodes", config.evaluation.final_episodes);
    }
    read(j, "seeds", config.seeds);
    if (j.contains("output_dir")) config.output_dir = j.at("output_dir").get<std::string>();
    return config;
}

}  // namespace

envs::GridConfig grid_config_from_json(const json& j) {
    envs::GridConfig grid = envs::GridConfig::default_layout();
    try {
        read_grid(j, grid);
        envs::validate(grid);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed grid config: ") + e.what());
    } catch (const InvalidInput& e) {
        throw ConfigError(e.what());
    }
    return grid;
}

ExperimentConfig config_from_json(const json& j) { return config_from_json(j, {}); }

ExperimentConfig config_from_json(const json& j, const std::filesystem::path& base_dir) {
    ExperimentConfig config;
    try {
        config = parse(j, base_dir);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed experiment config: ") + e.what());
    } catch (const InvalidInput& e) {
        throw ConfigError(e.what());
    }
    validate(config);
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
    }
    return config_from_json(j, path.parent_path());
}

}  // namespace camarl::harness
