#include "camarl/envs/environment.hpp"

#include "camarl/errors.hpp"

namespace camarl::envs {

GridEnvironment::GridEnvironment(GridConfig config) : config_(std::move(config)) {
    validate(config_);
    reset();
}

void GridEnvironment::reset() {
    state_ = grid_reset(config_);
    if (malfunction_) state_ = apply_malfunction(std::move(state_), *malfunction_);
}

GridEnvironment::Outcome GridEnvironment::step(const std::vector<int>& actions) {
    std::vector<GridAction> joint;
    joint.reserve(actions.size());
    for (int a : actions) joint.push_back(grid_action_from_index(a));
    GridStepResult result = grid_step(config_, state_, joint);
    state_ = std::move(result.state);
    return {std::move(result.rewards), result.done};
}

Eigen::MatrixXd GridEnvironment::observations() const {
    Eigen::MatrixXd obs(obs_size(), n_agents());
    for (int i = 0; i < n_agents(); ++i) obs.col(i) = grid_observation(config_, state_, i);
    return obs;
}

CrawlerEnvironment::CrawlerEnvironment(int n_agents) : n_agents_(n_agents), state_(crawler_reset(n_agents)) {}

void CrawlerEnvironment::reset() {
    state_ = crawler_reset(n_agents_);
    if (malfunction_) state_ = apply_malfunction(std::move(state_), *malfunction_);
}

CrawlerEnvironment::Outcome CrawlerEnvironment::step(const Eigen::MatrixXd& actions) {
    if (actions.cols() != n_agents_) throw InvalidInput("one action column per leg is required");
    std::vector<Eigen::VectorXd> joint;
    joint.reserve(static_cast<std::size_t>(n_agents_));
    for (int i = 0; i < n_agents_; ++i) joint.emplace_back(actions.col(i));
    CrawlerStepResult result = crawler_step(state_, joint);
    state_ = std::move(result.state);
    return {result.team_reward, result.done};
}

Eigen::MatrixXd CrawlerEnvironment::observations() const {
    const Eigen::VectorXd shared = crawler_observation(state_);
    return shared.replicate(1, n_agents_);
}

}  // namespace camarl::envs
