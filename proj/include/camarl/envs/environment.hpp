#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "camarl/envs/crawler.hpp"
#include "camarl/envs/gridworld.hpp"
#include "camarl/envs/malfunction.hpp"

namespace camarl::envs {

// Stateful wrappers used by the training loop. A configured malfunction is
// re-applied on every reset so it persists across episodes.

class GridEnvironment {
public:
    explicit GridEnvironment(GridConfig config);

    struct Outcome {
        std::vector<double> rewards;
        bool done = false;
    };

    void set_malfunction(std::optional<MalfunctionSpec> spec) { malfunction_ = spec; }
    const std::optional<MalfunctionSpec>& malfunction() const { return malfunction_; }

    void reset();
    Outcome step(const std::vector<int>& actions);

    // obs_size x n_agents
    Eigen::MatrixXd observations() const;
    const GridWorldState& state() const { return state_; }
    const GridConfig& config() const { return config_; }
    int n_agents() const { return config_.n_agents(); }
    int obs_size() const { return grid_observation_size(config_); }
    bool done() const { return grid_terminal(config_, state_); }

private:
    GridConfig config_;
    GridWorldState state_;
    std::optional<MalfunctionSpec> malfunction_;
};

class CrawlerEnvironment {
public:
    explicit CrawlerEnvironment(int n_agents = crawler::kAgents);

    struct Outcome {
        double team_reward = 0.0;
        bool done = false;
    };

    void set_malfunction(std::optional<MalfunctionSpec> spec) { malfunction_ = spec; }
    const std::optional<MalfunctionSpec>& malfunction() const { return malfunction_; }

    void reset();
    // actions: action_dim x n_agents
    Outcome step(const Eigen::MatrixXd& actions);

    Eigen::MatrixXd observations() const;
    const CrawlerState& state() const { return state_; }
    int n_agents() const { return n_agents_; }
    int obs_size() const { return crawler_observation_size(n_agents_); }
    int action_dim() const { return crawler::kActionDim; }
    bool done() const { return crawler_terminal(state_); }

private:
    int n_agents_;
    CrawlerState state_;
    std::optional<MalfunctionSpec> malfunction_;
};

}  // namespace camarl::envs
