// camarl: train, evaluate, summarize and export collaborative-adaptation runs.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "camarl/envs/grid_oracle.hpp"
#include "camarl/errors.hpp"
#include "camarl/harness/checkpoint.hpp"
#include "camarl/harness/experiment.hpp"
#include "camarl/harness/summary.hpp"

namespace {

namespace fs = std::filesystem;
using namespace camarl;

constexpr int kConfigFailure = 1;
constexpr int kRuntimeFailure = 2;

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out || !(out << text)) throw InvalidState("cannot write " + path);
}

nlohmann::json result_json(const harness::EvaluationResult& r) {
    nlohmann::json j{{"episodes", r.episodes}, {"team_return", r.team}, {"mean_length", r.length}};
    if (r.per_agent.empty()) {
        j["origin_distance"] = r.origin_distance;
    } else {
        j["per_agent_return"] = r.per_agent;
    }
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Collaborative adaptation for multi-agent value decomposition"};
    app.require_subcommand(1);

    auto* train = app.add_subcommand("train", "Run every seed of an experiment config");
    std::string config_path;
    long log_every = 500;
    std::vector<std::uint64_t> only_seeds;
    std::string output_override;
    train->add_option("config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
    train->add_option("--log-every", log_every, "Progress line every N episodes (0 = quiet)");
    train->add_option("--seed", only_seeds, "Run only these seeds");
    train->add_option("--output", output_override, "Override the output directory");

    auto* eval = app.add_subcommand("eval", "Greedy evaluation of a saved checkpoint");
    std::string checkpoint_dir;
    int eval_episodes = 10;
    eval->add_option("checkpoint", checkpoint_dir, "Checkpoint directory")->required();
    eval->add_option("--episodes", eval_episodes, "Greedy episodes")->check(CLI::PositiveNumber);

    auto* summarize = app.add_subcommand("summarize", "Mean and 95% interval across runs");
    std::vector<std::string> run_dirs;
    std::string summary_out;
    summarize->add_option("runs", run_dirs, "Run or experiment directories")->required();
    summarize->add_option("--output", summary_out, "Write CSV here instead of stdout");

    auto* export_traj = app.add_subcommand("export-traj", "Export recorded evaluation trajectories");
    std::string traj_run;
    std::string phase = "eval";
    std::optional<long> from, to;
    std::string traj_out;
    export_traj->add_option("run", traj_run, "Seed directory")->required();
    export_traj->add_option("--phase", phase, "eval or final")->check(CLI::IsMember({"eval", "final"}));
    export_traj->add_option("--from", from, "First episode (inclusive)");
    export_traj->add_option("--to", to, "Last episode (inclusive)");
    export_traj->add_option("--output", traj_out, "Write CSV here instead of stdout");

    auto* oracle = app.add_subcommand("oracle", "Optimal team return of a grid layout");
    std::string oracle_config;
    std::vector<int> immobilized_agents;
    oracle->add_option("--config", oracle_config, "Experiment config whose grid is searched")->check(CLI::ExistingFile);
    oracle->add_option("--immobilize", immobilized_agents, "Agents malfunctioning from the start");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigFailure;
    }

    try {
        if (train->parsed()) {
            auto config = harness::load_config(config_path);
            if (!output_override.empty()) config.output_dir = output_override;
            if (!only_seeds.empty()) config.seeds = only_seeds;
            harness::RunOptions options;
            options.log_every_episodes = log_every;
            options.log = [](const std::string& line) { std::cerr << line << '\n'; };
            for (const auto& run : harness::run_experiment(config, options)) {
                std::cout << "seed " << run.seed << ": " << run.episodes_completed << " episodes -> "
                          << run.directory.string() << '\n';
            }
        } else if (eval->parsed()) {
            const auto checkpoint = harness::load_checkpoint(checkpoint_dir);
            std::cout << result_json(harness::evaluate_checkpoint(checkpoint, eval_episodes)).dump(2) << '\n';
        } else if (summarize->parsed()) {
            std::vector<fs::path> paths(run_dirs.begin(), run_dirs.end());
            const auto table = harness::summarize_runs(paths);
            if (table.single_run_warning) std::cerr << "warning: single run, intervals are zero\n";
            write_output(harness::to_csv(table), summary_out);
        } else if (export_traj->parsed()) {
            std::optional<std::pair<long, long>> range;
            if (from || to) range = std::make_pair(from.value_or(0), to.value_or(std::numeric_limits<long>::max()));
            const auto exported = harness::export_trajectories(traj_run, phase, range);
            for (long e : exported.missing_episodes) {
                std::cerr << "gap: episode " << e << " was evaluated but has no recorded trajectory\n";
            }
            write_output(harness::to_csv(exported.points), traj_out);
        } else if (oracle->parsed()) {
            envs::GridConfig grid = envs::GridConfig::default_layout();
            if (!oracle_config.empty()) grid = harness::load_config(oracle_config).grid;
            std::vector<bool> immobilized(grid.n_agents(), false);
            for (int i : immobilized_agents) {
                if (i < 0 || i >= grid.n_agents()) throw ConfigError("agent index out of range");
                immobilized[i] = true;
            }
            const auto best = envs::optimal_grid_return(grid, immobilized);
            std::cout << nlohmann::json{{"team_return", best.team},
                                        {"per_agent_return", best.per_agent},
                                        {"nodes_expanded", best.nodes_expanded}}
                             .dump(2)
                      << '\n';
        }
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kConfigFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntimeFailure;
    }
    return 0;
}
