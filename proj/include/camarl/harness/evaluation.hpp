#pragma once

#include <random>
#include <vector>

#include "camarl/envs/environment.hpp"
#include "camarl/harness/metrics.hpp"
#include "camarl/learners/continuous.hpp"
#include "camarl/learners/discrete.hpp"

namespace camarl::harness {

struct EvaluationResult {
    std::vector<double> per_agent;  // grid only; empty on the crawler
    double team = 0.0;
    double length = 0.0;
    double origin_distance = 0.0;      // crawler only: |body_x| at episode end
    double resources_remaining = 0.0;  // grid only: unconsumed resources at episode end
    int episodes = 0;
};

// Greedy rollouts with epsilon = 0 on a copy of `env`; nothing is written to
// memory and no parameter changes. When `trajectory` is given, the positions
// of the first episode are appended to it, labelled with `label`.
EvaluationResult evaluate_greedy(envs::GridEnvironment env, const learners::DiscreteLearner& learner, int n_episodes,
                                 std::vector<TrajectoryPoint>* trajectory = nullptr, long label = 0);

// Candidate actions for the sampled argmax come from `eval_rng`, which must be
// a stream separate from the training streams.
EvaluationResult evaluate_greedy(envs::CrawlerEnvironment env, const learners::ContinuousLearner& learner,
                                 int n_episodes, std::mt19937_64& eval_rng,
                                 std::vector<TrajectoryPoint>* trajectory = nullptr, long label = 0);

void append_positions(const envs::GridWorldState& state, long episode, std::vector<TrajectoryPoint>& out);
void append_positions(const envs::CrawlerState& state, long episode, std::vector<TrajectoryPoint>& out);

}  // namespace camarl::harness
