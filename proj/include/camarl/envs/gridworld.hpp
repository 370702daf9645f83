#pragma once

#include <compare>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace camarl::envs {

struct Cell {
    int x = 0;
    int y = 0;

    friend auto operator<=>(const Cell&, const Cell&) = default;
};

// Indices are the network output order; ties in greedy selection go to `up`.
enum class GridAction { up = 0, down = 1, left = 2, right = 3, idle = 4 };
inline constexpr int kGridActionCount = 5;

GridAction grid_action_from_index(int index);
std::string_view to_string(GridAction action);

// `up` decreases y; `right` increases x.
Cell displacement(GridAction action);

struct GridConfig {
    int width = 10;
    int height = 10;
    std::vector<Cell> agent_starts;
    std::vector<Cell> resource_cells;
    int max_steps = 30;
    double consume_reward = 10.0;
    double step_penalty_per_resource = -1.0;

    int n_agents() const { return static_cast<int>(agent_starts.size()); }
    int n_resources() const { return static_cast<int>(resource_cells.size()); }
    bool in_bounds(Cell c) const { return c.x >= 0 && c.y >= 0 && c.x < width && c.y < height; }
    bool is_resource_cell(Cell c) const;

    // 10x10, agents blue (1,1), red (1,8), orange (8,1), green (8,8),
    // resources in the central 2x2 block, 30 steps.
    static GridConfig default_layout();
};

inline constexpr int kGreenAgent = 3;

// Throws InvalidInput on cells outside the grid or duplicated starts/resources.
void validate(const GridConfig& config);

struct GridWorldState {
    std::vector<Cell> agent_positions;
    std::vector<bool> resource_consumed;
    int step_count = 0;
    std::vector<bool> immobilized;

    int remaining_resources() const;
    friend bool operator==(const GridWorldState&, const GridWorldState&) = default;
};

struct GridStepResult {
    GridWorldState state;
    std::vector<double> rewards;
    bool done = false;
};

GridWorldState grid_reset(const GridConfig& config);
bool grid_terminal(const GridConfig& config, const GridWorldState& state);

// One simultaneous move. Resolution order:
//   1. immobilized agents act idle;
//   2. a non-idle action into a cell holding an idle agent is a push: the pusher
//      stays, the pushed agent moves one cell further if that cell is in bounds
//      and empty (first pusher by index wins); push chains never propagate;
//   3. remaining movers advance into in-bounds cells that end the step empty;
//      the lowest index wins a contested cell and head-on swaps are blocked;
//   4. agents standing on unconsumed resources consume them;
//   5. every agent off a resource cell pays the per-resource penalty times the
//      number of resources still unconsumed.
// Throws InvalidState on a terminal state, InvalidInput on a wrong action count.
GridStepResult grid_step(const GridConfig& config, const GridWorldState& state,
                         std::span<const GridAction> joint_action);

// Flat global view normalized to [0, 1]: own (x, y), every agent's (x, y),
// then one consumed flag per resource.
int grid_observation_size(const GridConfig& config);
Eigen::VectorXd grid_observation(const GridConfig& config, const GridWorldState& state, int agent);

}  // namespace camarl::envs
