#include "camarl/envs/gridworld.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "camarl/errors.hpp"

namespace camarl::envs {

GridAction grid_action_from_index(int index) {
    if (index < 0 || index >= kGridActionCount) {
        throw InvalidInput("grid action index " + std::to_string(index) + " out of range");
    }
    return static_cast<GridAction>(index);
}

std::string_view to_string(GridAction action) {
    switch (action) {
    case GridAction::up:
        return "up";
    case GridAction::down:
        return "down";
    case GridAction::left:
        return "left";
    case GridAction::right:
        return "right";
    case GridAction::idle:
        return "idle";
    }
    return "idle";
}

Cell displacement(GridAction action) {
    switch (action) {
    case GridAction::up:
        return {0, -1};
    case GridAction::down:
        return {0, 1};
    case GridAction::left:
        return {-1, 0};
    case GridAction::right:
        return {1, 0};
    case GridAction::idle:
        return {0, 0};
    }
    return {0, 0};
}

bool GridConfig::is_resource_cell(Cell c) const {
    return std::find(resource_cells.begin(), resource_cells.end(), c) != resource_cells.end();
}

GridConfig GridConfig::default_layout() {
    GridConfig config;
    config.width = 10;
    config.height = 10;
    config.agent_starts = {{1, 1}, {1, 8}, {8, 1}, {8, 8}};
    config.resource_cells = {{4, 4}, {4, 5}, {5, 4}, {5, 5}};
    config.max_steps = 30;
    return config;
}

void validate(const GridConfig& config) {
    if (config.width <= 0 || config.height <= 0) throw InvalidInput("grid dimensions must be positive");
    if (config.max_steps <= 0) throw InvalidInput("max_steps must be positive");
    if (config.agent_starts.empty()) throw InvalidInput("grid needs at least one agent");
    auto check_cells = [&](const std::vector<Cell>& cells, const char* what) {
        std::set<Cell> seen;
        for (const Cell& c : cells) {
            if (!config.in_bounds(c)) {
                throw InvalidInput(std::string(what) + " (" + std::to_string(c.x) + "," + std::to_string(c.y) +
                                   ") lies outside the grid");
            }
            if (!seen.insert(c).second) {
                throw InvalidInput(std::string(what) + " (" + std::to_string(c.x) + "," + std::to_string(c.y) +
                                   ") is listed twice");
            }
        }
    };
    check_cells(config.agent_starts, "agent start");
    check_cells(config.resource_cells, "resource cell");
}

int GridWorldState::remaining_resources() const {
    return static_cast<int>(std::count(resource_consumed.begin(), resource_consumed.end(), false));
}

GridWorldState grid_reset(const GridConfig& config) {
    validate(config);
    GridWorldState state;
    state.agent_positions = config.agent_starts;
    state.resource_consumed.assign(config.resource_cells.size(), false);
    state.step_count = 0;
    state.immobilized.assign(config.agent_starts.size(), false);
    return state;
}

bool grid_terminal(const GridConfig& config, const GridWorldState& state) {
    return state.remaining_resources() == 0 || state.step_count >= config.max_steps;
}

namespace {

Cell offset(Cell c, Cell d) { return {c.x + d.x, c.y + d.y}; }

int occupant(const std::vector<Cell>& positions, Cell c) {
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (positions[i] == c) return static_cast<int>(i);
    }
    return -1;
}

}  // namespace

GridStepResult grid_step(const GridConfig& config, const GridWorldState& state,
                         std::span<const GridAction> joint_action) {
    const int n = config.n_agents();
    if (static_cast<int>(joint_action.size()) != n) {
        throw InvalidInput("joint action has " + std::to_string(joint_action.size()) + " entries for " +
                           std::to_string(n) + " agents");
    }
    if (static_cast<int>(state.agent_positions.size()) != n ||
        state.resource_consumed.size() != config.resource_cells.size()) {
        throw InvalidInput("grid state does not match its configuration");
    }
    if (grid_terminal(config, state)) throw InvalidState("grid episode already terminated");

    std::vector<GridAction> actions(joint_action.begin(), joint_action.end());
    for (int i = 0; i < n; ++i) {
        if (state.immobilized[static_cast<std::size_t>(i)]) actions[static_cast<std::size_t>(i)] = GridAction::idle;
    }

    const auto& start = state.agent_positions;
    std::vector<Cell> final_pos = start;
    std::vector<bool> pushed(static_cast<std::size_t>(n), false);
    std::vector<bool> mover(static_cast<std::size_t>(n), false);
    std::vector<Cell> target(static_cast<std::size_t>(n));

    // Pushes, then collect candidate movers.
    for (int i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        if (actions[ui] == GridAction::idle) continue;
        const Cell dir = displacement(actions[ui]);
        const Cell dest = offset(start[ui], dir);
        if (!config.in_bounds(dest)) continue;
        const int j = occupant(start, dest);
        if (j >= 0 && actions[static_cast<std::size_t>(j)] == GridAction::idle) {
            const auto uj = static_cast<std::size_t>(j);
            if (pushed[uj]) continue;
            const Cell landing = offset(dest, dir);
            if (config.in_bounds(landing) && occupant(start, landing) < 0 && occupant(final_pos, landing) < 0) {
                final_pos[uj] = landing;
                pushed[uj] = true;
            }
            continue;
        }
        mover[ui] = true;
        target[ui] = dest;
    }

    // The lowest index claims a contested destination.
    for (int i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        if (!mover[ui]) continue;
        for (int k = 0; k < i; ++k) {
            const auto uk = static_cast<std::size_t>(k);
            if (mover[uk] && target[uk] == target[ui]) {
                mover[ui] = false;
                break;
            }
        }
    }

    // Drop movers blocked by agents that stay put, repeated until stable.
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < n; ++i) {
            const auto ui = static_cast<std::size_t>(i);
            if (!mover[ui]) continue;
            bool blocked = false;
            for (int k = 0; k < n && !blocked; ++k) {
                const auto uk = static_cast<std::size_t>(k);
                if (k == i) continue;
                if (!mover[uk] && final_pos[uk] == target[ui]) blocked = true;
                if (mover[uk] && start[uk] == target[ui] && target[uk] == start[ui]) blocked = true;
            }
            if (blocked) {
                mover[ui] = false;
                changed = true;
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        if (mover[ui]) final_pos[ui] = target[ui];
    }

    GridStepResult result;
    result.state = state;
    result.state.agent_positions = final_pos;
    result.rewards.assign(static_cast<std::size_t>(n), 0.0);

    for (int i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        for (std::size_t r = 0; r < config.resource_cells.size(); ++r) {
            if (!result.state.resource_consumed[r] && config.resource_cells[r] == final_pos[ui]) {
                result.state.resource_consumed[r] = true;
                result.rewards[ui] += config.consume_reward;
            }
        }
    }
    const int remaining = result.state.remaining_resources();
    for (int i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        if (!config.is_resource_cell(final_pos[ui])) {
            result.rewards[ui] += config.step_penalty_per_resource * remaining;
        }
    }
    result.state.step_count = state.step_count + 1;
    result.done = grid_terminal(config, result.state);
    return result;
}

int grid_observation_size(const GridConfig& config) {
    return 2 + 2 * config.n_agents() + config.n_resources();
}

Eigen::VectorXd grid_observation(const GridConfig& config, const GridWorldState& state, int agent) {
    if (agent < 0 || agent >= config.n_agents()) throw InvalidInput("agent index out of range");
    const double sx = config.width > 1 ? 1.0 / (config.width - 1) : 0.0;
    const double sy = config.height > 1 ? 1.0 / (config.height - 1) : 0.0;
    Eigen::VectorXd obs(grid_observation_size(config));
    Eigen::Index k = 0;
    const Cell own = state.agent_positions[static_cast<std::size_t>(agent)];
    obs(k++) = own.x * sx;
    obs(k++) = own.y * sy;
    for (const Cell& c : state.agent_positions) {
        obs(k++) = c.x * sx;
        obs(k++) = c.y * sy;
    }
    for (bool consumed : state.resource_consumed) obs(k++) = consumed ? 1.0 : 0.0;
    return obs;
}

}  // namespace camarl::envs
