#pragma once

#include <cstddef>
#include <vector>

#include "camarl/envs/gridworld.hpp"

namespace camarl::envs {

struct OptimalReturn {
    double team = 0.0;
    // Per-agent undiscounted returns along the team-optimal plan that was found first.
    std::vector<double> per_agent;
    std::vector<std::vector<GridAction>> plan;
    std::size_t nodes_expanded = 0;
};

struct OracleLimits {
    int max_side = 10;
    int max_agents = 4;
    int max_resources = 4;
    int max_horizon = 30;
    std::size_t max_nodes = 50'000'000;
};

// Exact maximum of the undiscounted team return from reset, searching joint
// action sequences (pushes included) depth-first with an admissible upper
// bound and a transposition table. `immobilized` marks agents that are
// malfunctioning from the first step. Throws CapacityError when the instance
// exceeds `limits`.
OptimalReturn optimal_grid_return(const GridConfig& config, const std::vector<bool>& immobilized,
                                  const OracleLimits& limits = {});

}  // namespace camarl::envs
