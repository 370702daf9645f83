#include "camarl/harness/evaluation.hpp"

#include <cmath>

#include "camarl/errors.hpp"

namespace camarl::harness {

void append_positions(const envs::GridWorldState& state, long episode, std::vector<TrajectoryPoint>& out) {
    for (std::size_t i = 0; i < state.agent_positions.size(); ++i) {
        const auto& c = state.agent_positions[i];
        out.push_back({episode, state.step_count, "agent_" + std::to_string(i), double(c.x), double(c.y)});
    }
}

void append_positions(const envs::CrawlerState& state, long episode, std::vector<TrajectoryPoint>& out) {
    out.push_back({episode, state.step_count, "body", state.body_x, 0.0});
}

EvaluationResult evaluate_greedy(envs::GridEnvironment env, const learners::DiscreteLearner& learner, int n_episodes,
                                 std::vector<TrajectoryPoint>* trajectory, long label) {
    if (n_episodes < 1) throw InvalidInput("n_episodes must be positive");
    const int n = env.n_agents();
    EvaluationResult result;
    result.per_agent.assign(n, 0.0);
    // Exploration is off, so this stream is never drawn from.
    std::mt19937_64 unused(0);
    for (int ep = 0; ep < n_episodes; ++ep) {
        env.reset();
        const bool record = trajectory != nullptr && ep == 0;
        if (record) append_positions(env.state(), label, *trajectory);
        while (!env.done()) {
            const auto actions = learners::select_actions_discrete(learner.prediction_nets(), env.observations(), 0.0, unused);
            const auto outcome = env.step(actions);
            for (int i = 0; i < n; ++i) result.per_agent[i] += outcome.rewards[i];
            result.length += 1.0;
            if (record) append_positions(env.state(), label, *trajectory);
        }
        result.resources_remaining += env.state().remaining_resources();
    }
    result.team = 0.0;
    for (auto& r : result.per_agent) {
        r /= n_episodes;
        result.team += r;
    }
    result.length /= n_episodes;
    result.resources_remaining /= n_episodes;
    result.episodes = n_episodes;
    return result;
}

EvaluationResult evaluate_greedy(envs::CrawlerEnvironment env, const learners::ContinuousLearner& learner,
                                 int n_episodes, std::mt19937_64& eval_rng, std::vector<TrajectoryPoint>* trajectory,
                                 long label) {
    if (n_episodes < 1) throw InvalidInput("n_episodes must be positive");
    EvaluationResult result;
    const int k = learner.config().sample_count;
    for (int ep = 0; ep < n_episodes; ++ep) {
        env.reset();
        const bool record = trajectory != nullptr && ep == 0;
        if (record) append_positions(env.state(), label, *trajectory);
        while (!env.done()) {
            const auto actions = learners::select_actions_continuous(learner.heads(), env.observations(), 0.0, k, eval_rng);
            result.team += env.step(actions).team_reward;
            result.length += 1.0;
            if (record) append_positions(env.state(), label, *trajectory);
        }
        result.origin_distance += std::abs(env.state().body_x);
    }
    result.team /= n_episodes;
    result.length /= n_episodes;
    result.origin_distance /= n_episodes;
    result.episodes = n_episodes;
    return result;
}

}  // namespace camarl::harness
