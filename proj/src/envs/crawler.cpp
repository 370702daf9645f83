#include "camarl/envs/crawler.hpp"

#include <algorithm>
#include <string>

#include "camarl/errors.hpp"

namespace camarl::envs {

CrawlerState crawler_reset(int n_agents) {
    if (n_agents != crawler::kAgents) {
        throw InvalidInput("crawler supports exactly " + std::to_string(crawler::kAgents) + " agents, got " +
                           std::to_string(n_agents));
    }
    CrawlerState state;
    state.hip_angles.assign(static_cast<std::size_t>(n_agents), 0.0);
    state.extensions.assign(static_cast<std::size_t>(n_agents), 0.0);
    state.zero_torque.assign(static_cast<std::size_t>(n_agents), false);
    return state;
}

bool crawler_terminal(const CrawlerState& state) {
    return state.flipped || state.step_count >= crawler::kMaxSteps;
}

CrawlerStepResult crawler_step(const CrawlerState& state, std::span<const Eigen::VectorXd> joint_action) {
    const int n = state.n_agents();
    if (static_cast<int>(joint_action.size()) != n) {
        throw InvalidInput("crawler joint action has " + std::to_string(joint_action.size()) + " entries for " +
                           std::to_string(n) + " legs");
    }
    if (crawler_terminal(state)) throw InvalidState("crawler episode already terminated");

    CrawlerStepResult result;
    result.state = state;
    double dx = 0.0;
    double control = 0.0;
    double extension_sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        const Eigen::VectorXd& a = joint_action[ui];
        if (a.size() != crawler::kActionDim) throw InvalidInput("crawler actions are (sweep, extend) pairs");
        double sweep = std::clamp(a(0), -1.0, 1.0);
        double extend = std::clamp(a(1), -1.0, 1.0);
        if (state.zero_torque[ui]) {
            sweep = 0.0;
            extend = 0.0;
        }
        const double hip = state.hip_angles[ui];
        const double ext = state.extensions[ui];
        const double hip_next = std::clamp(hip + crawler::kActuatorGain * sweep, -1.0, 1.0);
        const double ext_next = std::clamp(ext + crawler::kActuatorGain * extend, -1.0, 1.0);
        dx += std::max(0.0, hip - hip_next) * std::max(0.0, ext);
        control += sweep * sweep + extend * extend;
        result.state.hip_angles[ui] = hip_next;
        result.state.extensions[ui] = ext_next;
        extension_sum += ext_next;
    }
    result.state.body_x = state.body_x + dx;
    result.team_reward = crawler::kStableReward + dx / crawler::kDt - crawler::kControlCost * control;

    result.state.instability_counter = extension_sum < crawler::kFlipThreshold ? state.instability_counter + 1 : 0;
    if (result.state.instability_counter >= crawler::kFlipSteps) {
        result.state.flipped = true;
        result.team_reward += crawler::kFlipPenalty;
    }
    result.state.step_count = state.step_count + 1;
    result.done = crawler_terminal(result.state);
    return result;
}

int crawler_observation_size(int n_agents) { return 2 * n_agents + 1; }

Eigen::VectorXd crawler_observation(const CrawlerState& state) {
    const int n = state.n_agents();
    Eigen::VectorXd obs(crawler_observation_size(n));
    for (int i = 0; i < n; ++i) {
        obs(i) = state.hip_angles[static_cast<std::size_t>(i)];
        obs(n + i) = state.extensions[static_cast<std::size_t>(i)];
    }
    obs(2 * n) = static_cast<double>(state.instability_counter) / crawler::kFlipSteps;
    return obs;
}

}  // namespace camarl::envs
