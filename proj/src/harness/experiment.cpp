#include "camarl/harness/experiment.hpp"

#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>

#include "camarl/envs/environment.hpp"
#include "camarl/errors.hpp"
#include "camarl/harness/checkpoint.hpp"
#include "camarl/harness/evaluation.hpp"
#include "camarl/harness/metrics.hpp"
#include "camarl/learners/continuous.hpp"
#include "camarl/learners/discrete.hpp"

namespace camarl::harness {

namespace fs = std::filesystem;

RunStreams RunStreams::from_seed(std::uint64_t seed) {
    auto stream = [seed](std::uint32_t id) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), id};
        return std::mt19937_64(seq);
    };
    return {stream(1), stream(2), stream(3), stream(4)};
}

fs::path seed_directory(const ExperimentConfig& config, std::uint64_t seed) {
    return config.output_dir / ("seed_" + std::to_string(seed));
}

void prepare_output(const ExperimentConfig& config) {
    validate(config);
    for (auto seed : config.seeds) {
        const fs::path dir = seed_directory(config, seed);
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
        const fs::path probe = dir / ".write_probe";
        {
            std::ofstream out(probe);
            if (!out || !(out << "ok")) throw ConfigError("output directory " + dir.string() + " is not writable");
        }
        fs::remove(probe, ec);
    }
}

namespace {

std::string engine_state(const std::mt19937_64& engine) {
    std::ostringstream out;
    out << engine;
    return out.str();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Output files and bookkeeping shared by both learner families.
class RunRecorder {
public:
    RunRecorder(const ExperimentConfig& config, std::uint64_t seed)
        : dir_(seed_directory(config, seed)),
          metrics_(dir_ / "metrics.csv"),
          timing_(dir_ / "timing.csv", "episode,phase,seconds"),
          eval_traj_(dir_ / "trajectories_eval.csv", kTrajectoryHeader),
          final_traj_(dir_ / "trajectories_final.csv", kTrajectoryHeader) {
        ExperimentConfig single = config;
        single.seeds = {seed};
        std::ofstream out(dir_ / "config.json");
        out << to_json(single).dump(2) << '\n';
        if (!out) throw InvalidState("cannot write " + (dir_ / "config.json").string());
    }

    const fs::path& dir() const { return dir_; }

    void row(long episode, const std::string& phase, const std::string& agent, const std::string& metric,
             double value) {
        metrics_.append({episode, phase, agent, metric, value});
    }

    void evaluation(long episode, const std::string& phase, const EvaluationResult& r,
                    const std::vector<TrajectoryPoint>& trajectory, double seconds, bool crawler) {
        for (std::size_t i = 0; i < r.per_agent.size(); ++i) row(episode, phase, std::to_string(i), "return", r.per_agent[i]);
        row(episode, phase, "team", "return", r.team);
        row(episode, phase, "team", "length", r.length);
        if (crawler) {
            row(episode, phase, "team", "origin_distance", r.origin_distance);
        } else {
            row(episode, phase, "team", "resources_remaining", r.resources_remaining);
        }
        row(episode, phase, "team", "episodes", r.episodes);
        auto& traj = phase == "final" ? final_traj_ : eval_traj_;
        for (const auto& p : trajectory) traj.write_line(to_csv_line(p));
        timing(episode, phase, seconds);
    }

    void timing(long episode, const std::string& phase, double seconds) {
        timing_.write_line(std::to_string(episode) + ',' + phase + ',' + format_real(seconds));
    }

    void flush() {
        metrics_.flush();
        timing_.flush();
        eval_traj_.flush();
        final_traj_.flush();
    }

private:
    fs::path dir_;
    MetricsWriter metrics_;
    CsvWriter timing_;
    CsvWriter eval_traj_;
    CsvWriter final_traj_;
};

void log_progress(const RunOptions& options, std::uint64_t seed, long episode, long total, double team_return,
                  double epsilon) {
    if (!options.log || options.log_every_episodes <= 0 || episode % options.log_every_episodes != 0) return;
    std::ostringstream out;
    out << "seed " << seed << " episode " << episode << "/" << total << " return " << team_return << " epsilon "
        << epsilon;
    options.log(out.str());
}

// Graph in force for an episode, rebuilt only when the schedule moves on.
class GraphTracker {
public:
    explicit GraphTracker(const ExperimentConfig& config) : config_(config) {}

    const relnet::RelationalNetwork& at(long episode) {
        if (!current_ || current_->label() != label_for(episode)) current_ = active_graph(config_, episode);
        return *current_;
    }

private:
    std::string label_for(long episode) const {
        if (!uses_relational_schedule(config_.learner)) return "identity";
        std::string label;
        for (const auto& e : config_.relational_schedule) {
            if (e.start_episode <= episode) label = e.graph;
        }
        return label;
    }

    const ExperimentConfig& config_;
    std::optional<relnet::RelationalNetwork> current_;
};

RunArtifacts run_discrete(const ExperimentConfig& config, std::uint64_t seed, const RunOptions& options) {
    RunStreams streams = RunStreams::from_seed(seed);
    RunRecorder rec(config, seed);
    envs::GridEnvironment env(config.grid);
    const int n = env.n_agents();
    const auto& lc = config.learner_config;
    learners::DiscreteLearner learner(n, env.obs_size(), envs::kGridActionCount, lc, streams.initialization);
    learners::ReplayMemory<learners::DiscreteTransition> memory(lc.replay_capacity);
    GraphTracker graphs(config);
    const auto mode = mixing_mode_for(config.learner);
    long eps_reset = 0;

    auto evaluate = [&](long episode, const std::string& phase, int episodes) {
        const auto start = std::chrono::steady_clock::now();
        std::vector<TrajectoryPoint> traj;
        const auto result = evaluate_greedy(env, learner, episodes, &traj, episode);
        rec.evaluation(episode, phase, result, traj, seconds_since(start), false);
    };

    for (long e = 0; e < config.total_episodes; ++e) {
        if (config.malfunction && config.malfunction->episode == e) {
            evaluate(e, "final", config.evaluation.final_episodes);
            env.set_malfunction(config.malfunction->spec);
            if (config.malfunction->reset_epsilon) eps_reset = e;
        }
        const auto start = std::chrono::steady_clock::now();
        const double eps = learners::epsilon_value(lc.epsilon, e, eps_reset);
        const auto& graph = graphs.at(e);
        env.reset();
        std::vector<double> returns(n, 0.0);
        int length = 0;
        while (!env.done()) {
            learners::DiscreteTransition t;
            t.observations = env.observations();
            const auto actions = learners::select_actions_discrete(learner.prediction_nets(), t.observations, eps,
                                                                   streams.exploration);
            const auto outcome = env.step(actions);
            t.actions = Eigen::Map<const Eigen::VectorXi>(actions.data(), n);
            t.rewards = Eigen::Map<const Eigen::VectorXd>(outcome.rewards.data(), n);
            t.next_observations = env.observations();
            t.done = outcome.done;
            memory.push(std::move(t));
            for (int i = 0; i < n; ++i) returns[i] += outcome.rewards[i];
            ++length;
        }
        double loss_sum = 0.0;
        int updates = 0;
        for (int it = 0; it < lc.update_iterations; ++it) {
            if (auto loss = learners::train_step_discrete(learner, memory, graph, mode, streams.sampling)) {
                loss_sum += *loss;
                ++updates;
            }
        }
        if ((e + 1) % lc.target_sync_period == 0) learner.sync_targets();

        double team = 0.0;
        for (int i = 0; i < n; ++i) {
            rec.row(e, "train", std::to_string(i), "return", returns[i]);
            team += returns[i];
        }
        rec.row(e, "train", "team", "return", team);
        rec.row(e, "train", "team", "length", length);
        rec.row(e, "train", "team", "epsilon", eps);
        if (updates > 0) rec.row(e, "train", "team", "loss", loss_sum / updates);
        rec.timing(e, "train", seconds_since(start));
        log_progress(options, seed, e, config.total_episodes, team, eps);

        const long completed = e + 1;
        if (config.evaluation.every_episodes > 0 && completed % config.evaluation.every_episodes == 0) {
            evaluate(completed, "eval", config.evaluation.episodes);
        }
    }
    evaluate(config.total_episodes, "final", config.evaluation.final_episodes);
    rec.flush();

    if (options.write_checkpoint) {
        CheckpointInfo info{seed,
                            config.total_episodes,
                            eps_reset,
                            graphs.at(config.total_episodes - 1).label(),
                            env.malfunction().has_value(),
                            engine_state(streams.exploration),
                            engine_state(streams.sampling),
                            engine_state(streams.evaluation)};
        save_checkpoint(rec.dir() / "checkpoint", config, info, learner);
    }
    return {seed, rec.dir(), config.total_episodes};
}

RunArtifacts run_continuous(const ExperimentConfig& config, std::uint64_t seed, const RunOptions& options) {
    RunStreams streams = RunStreams::from_seed(seed);
    RunRecorder rec(config, seed);
    envs::CrawlerEnvironment env(config.crawler_agents);
    const int n = env.n_agents();
    const auto& lc = config.learner_config;
    learners::ContinuousLearner learner(n, env.obs_size(), env.action_dim(), lc, streams.initialization);
    learners::ReplayMemory<learners::ContinuousTransition> memory(lc.replay_capacity);
    GraphTracker graphs(config);
    const auto mode = mixing_mode_for(config.learner);
    long eps_reset = 0;
    long steps = 0;
    const long every_steps = config.evaluation.every_steps;
    long next_eval_step = every_steps;

    auto evaluate = [&](long episode, const std::string& phase, int episodes) {
        const auto start = std::chrono::steady_clock::now();
        std::vector<TrajectoryPoint> traj;
        const auto result = evaluate_greedy(env, learner, episodes, streams.evaluation, &traj, episode);
        rec.evaluation(episode, phase, result, traj, seconds_since(start), true);
    };

    for (long e = 0; e < config.total_episodes; ++e) {
        if (config.malfunction && config.malfunction->episode == e) {
            evaluate(e, "final", config.evaluation.final_episodes);
            env.set_malfunction(config.malfunction->spec);
            if (config.malfunction->reset_epsilon) eps_reset = e;
        }
        const auto start = std::chrono::steady_clock::now();
        const double eps = learners::epsilon_value(lc.epsilon, e, eps_reset);
        const auto& graph = graphs.at(e);
        env.reset();
        double team = 0.0;
        int length = 0;
        double loss_sum = 0.0;
        int updates = 0;
        while (!env.done()) {
            learners::ContinuousTransition t;
            t.observations = env.observations();
            t.actions = learners::select_actions_continuous(learner.heads(), t.observations, eps, lc.sample_count,
                                                            streams.exploration);
            const auto outcome = env.step(t.actions);
            t.rewards = Eigen::VectorXd::Constant(1, outcome.team_reward);
            t.next_observations = env.observations();
            t.done = outcome.done;
            memory.push(std::move(t));
            team += outcome.team_reward;
            ++length;
            ++steps;
            if (steps % lc.train_every_steps == 0) {
                for (int it = 0; it < lc.update_iterations; ++it) {
                    if (auto loss = learners::train_step_continuous(learner, memory, graph, mode, lc.sample_count,
                                                                    streams.sampling)) {
                        loss_sum += *loss;
                        ++updates;
                    }
                }
            }
        }
        rec.row(e, "train", "team", "return", team);
        rec.row(e, "train", "team", "length", length);
        rec.row(e, "train", "team", "epsilon", eps);
        rec.row(e, "train", "team", "origin_distance", std::abs(env.state().body_x));
        if (updates > 0) rec.row(e, "train", "team", "loss", loss_sum / updates);
        rec.timing(e, "train", seconds_since(start));
        log_progress(options, seed, e, config.total_episodes, team, eps);

        const long completed = e + 1;
        bool due = false;
        if (every_steps > 0) {
            // Evaluation waits for the episode boundary, once per crossed threshold group.
            if (steps >= next_eval_step) {
                due = true;
                next_eval_step = (steps / every_steps + 1) * every_steps;
            }
        } else {
            due = completed % config.evaluation.every_episodes == 0;
        }
        if (due) evaluate(completed, "eval", config.evaluation.episodes);
    }
    evaluate(config.total_episodes, "final", config.evaluation.final_episodes);
    rec.flush();

    if (options.write_checkpoint) {
        CheckpointInfo info{seed,
                            config.total_episodes,
                            eps_reset,
                            graphs.at(config.total_episodes - 1).label(),
                            env.malfunction().has_value(),
                            engine_state(streams.exploration),
                            engine_state(streams.sampling),
                            engine_state(streams.evaluation)};
        save_checkpoint(rec.dir() / "checkpoint", config, info, learner);
    }
    return {seed, rec.dir(), config.total_episodes};
}

}  // namespace

RunArtifacts run_seed(const ExperimentConfig& config, std::uint64_t seed, const RunOptions& options) {
    validate(config);
    ExperimentConfig single = config;
    single.seeds = {seed};
    prepare_output(single);
    return is_discrete(config.learner) ? run_discrete(config, seed, options) : run_continuous(config, seed, options);
}

std::vector<RunArtifacts> run_experiment(const ExperimentConfig& config, const RunOptions& options) {
    prepare_output(config);
    std::vector<RunArtifacts> runs;
    for (auto seed : config.seeds) {
        runs.push_back(is_discrete(config.learner) ? run_discrete(config, seed, options)
                                                   : run_continuous(config, seed, options));
    }
    return runs;
}

}  // namespace camarl::harness
