#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace camarl::envs {

// Deterministic four-legged crawler. Each agent drives one leg with a
// (hip sweep, extension) action pair in [-1, 1]^2. Per step and leg:
//   hip'    = clamp(hip + 0.1 * a_sweep, -1, 1)
//   ext'    = clamp(ext + 0.1 * a_extend, -1, 1)
//   thrust  = max(0, hip - hip') * max(0, ext)
// The body advances by the summed thrust. Team reward per step is
//   0.01 + dx / dt - 0.05 * sum(a_sweep^2 + a_extend^2),  dt = 1,
// with an extra -100 and termination once the summed extension stays below
// -3.5 for five consecutive steps (the body flips). Episodes last 100 steps.
namespace crawler {
inline constexpr int kAgents = 4;
inline constexpr int kActionDim = 2;
inline constexpr int kMaxSteps = 100;
inline constexpr double kStableReward = 0.01;
inline constexpr double kActuatorGain = 0.1;
inline constexpr double kControlCost = 0.05;
inline constexpr double kFlipThreshold = -3.5;
inline constexpr int kFlipSteps = 5;
inline constexpr double kFlipPenalty = -100.0;
inline constexpr double kDt = 1.0;
}  // namespace crawler

struct CrawlerState {
    double body_x = 0.0;
    std::vector<double> hip_angles;
    std::vector<double> extensions;
    int step_count = 0;
    int instability_counter = 0;
    std::vector<bool> zero_torque;
    bool flipped = false;

    int n_agents() const { return static_cast<int>(hip_angles.size()); }
    friend bool operator==(const CrawlerState&, const CrawlerState&) = default;
};

struct CrawlerStepResult {
    CrawlerState state;
    double team_reward = 0.0;
    bool done = false;
};

// Only the four-leg body is supported; other counts throw InvalidInput.
CrawlerState crawler_reset(int n_agents);
bool crawler_terminal(const CrawlerState& state);

// Actions are clamped to [-1, 1]; a leg with zero torque applies (0, 0).
CrawlerStepResult crawler_step(const CrawlerState& state, std::span<const Eigen::VectorXd> joint_action);

// Shared by every agent: all hip angles, all extensions, instability_counter / 5.
int crawler_observation_size(int n_agents);
Eigen::VectorXd crawler_observation(const CrawlerState& state);

}  // namespace camarl::envs
