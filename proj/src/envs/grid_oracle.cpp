#include "camarl/envs/grid_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "camarl/errors.hpp"

namespace camarl::envs {

namespace {

constexpr double kTolerance = 1e-9;
constexpr int kUnreachable = 1 << 20;

int manhattan(Cell a, Cell b) { return std::abs(a.x - b.x) + std::abs(a.y - b.y); }

class Search {
public:
    Search(const GridConfig& config, const OracleLimits& limits) : config_(config), limits_(limits) {}

    OptimalReturn run(const GridWorldState& root) {
        best_.team = -std::numeric_limits<double>::infinity();
        std::vector<double> per_agent(static_cast<std::size_t>(config_.n_agents()), 0.0);
        std::vector<std::vector<GridAction>> path;
        dfs(root, 0.0, per_agent, path);
        best_.nodes_expanded = nodes_;
        return best_;
    }

    // Upper bound on the team return still obtainable from `state`.
    double upper_bound(const GridWorldState& state) const {
        const int horizon = config_.max_steps - state.step_count;
        const int n = config_.n_agents();
        const int m = config_.n_resources();
        if (state.remaining_resources() == 0 || horizon <= 0) return 0.0;

        // Earliest step (relative) at which each agent can stand on a cell.
        std::vector<int> approach(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < n; ++i) {
            if (!state.immobilized[static_cast<std::size_t>(i)]) continue;
            int d = kUnreachable;
            for (int j = 0; j < n; ++j) {
                if (!state.immobilized[static_cast<std::size_t>(j)]) {
                    d = std::min(d, manhattan(state.agent_positions[static_cast<std::size_t>(j)],
                                              state.agent_positions[static_cast<std::size_t>(i)]));
                }
            }
            approach[static_cast<std::size_t>(i)] = d >= kUnreachable ? kUnreachable : d - 1;
        }
        auto reach = [&](int i, Cell c) {
            const auto ui = static_cast<std::size_t>(i);
            const Cell p = state.agent_positions[ui];
            if (p == c) return 0;
            if (!state.immobilized[ui]) return manhattan(p, c);
            if (approach[ui] >= kUnreachable) return kUnreachable;
            return approach[ui] + manhattan(p, c);
        };

        std::vector<int> earliest_resource;
        for (int r = 0; r < m; ++r) {
            if (state.resource_consumed[static_cast<std::size_t>(r)]) continue;
            int best = kUnreachable;
            for (int i = 0; i < n; ++i) best = std::min(best, reach(i, config_.resource_cells[static_cast<std::size_t>(r)]));
            earliest_resource.push_back(std::max(1, best));
        }
        std::vector<int> first_consume(static_cast<std::size_t>(n), kUnreachable);
        std::vector<int> safe(static_cast<std::size_t>(n), kUnreachable);
        for (int i = 0; i < n; ++i) {
            for (int r = 0; r < m; ++r) {
                const Cell c = config_.resource_cells[static_cast<std::size_t>(r)];
                const int d = reach(i, c);
                safe[static_cast<std::size_t>(i)] = std::min(safe[static_cast<std::size_t>(i)], d);
                if (!state.resource_consumed[static_cast<std::size_t>(r)]) {
                    first_consume[static_cast<std::size_t>(i)] =
                        std::min(first_consume[static_cast<std::size_t>(i)], std::max(1, d));
                }
            }
        }
        const int remaining = static_cast<int>(earliest_resource.size());
        auto consumable = [&](int s) {
            int by_resource = 0;
            for (int e : earliest_resource) by_resource += e <= s ? 1 : 0;
            long by_agent = 0;
            for (int f : first_consume) by_agent += f <= s ? 1 + (s - f) : 0;
            return static_cast<int>(std::min<long>(by_resource, by_agent));
        };

        double bound = config_.consume_reward * consumable(horizon);
        const double penalty = config_.step_penalty_per_resource;
        int longest = 0;
        for (int i = 0; i < n; ++i) longest = std::max(longest, std::min(horizon, safe[static_cast<std::size_t>(i)] - 1));
        for (int s = 1; s <= longest; ++s) {
            const int unconsumed = remaining - consumable(s);
            if (unconsumed == 0) break;
            int exposed = 0;
            for (int i = 0; i < n; ++i) exposed += s < safe[static_cast<std::size_t>(i)] ? 1 : 0;
            bound += penalty * unconsumed * exposed;
        }
        return bound;
    }

private:
    std::uint64_t key(const GridWorldState& s) const {
        std::uint64_t k = 0;
        for (const Cell& c : s.agent_positions) k = (k << 7) | static_cast<std::uint64_t>(c.y * config_.width + c.x);
        for (bool consumed : s.resource_consumed) k = (k << 1) | (consumed ? 1u : 0u);
        return (k << 5) | static_cast<std::uint64_t>(s.step_count);
    }

    void dfs(const GridWorldState& state, double gained, std::vector<double>& per_agent,
             std::vector<std::vector<GridAction>>& path) {
        if (grid_terminal(config_, state)) {
            if (gained > best_.team + kTolerance) {
                best_.team = gained;
                best_.per_agent = per_agent;
                best_.plan = path;
            }
            return;
        }
        if (++nodes_ > limits_.max_nodes) {
            throw CapacityError("grid oracle exceeded its budget of " + std::to_string(limits_.max_nodes) + " nodes");
        }

        struct Child {
            GridStepResult step;
            std::vector<GridAction> actions;
            double step_team = 0.0;
            double bound = 0.0;
        };
        std::vector<Child> children;
        std::unordered_set<std::uint64_t> seen;
        const int n = config_.n_agents();
        std::vector<int> choice(static_cast<std::size_t>(n), 0);
        std::vector<GridAction> joint(static_cast<std::size_t>(n), GridAction::idle);
        while (true) {
            for (int i = 0; i < n; ++i) {
                const auto ui = static_cast<std::size_t>(i);
                joint[ui] = state.immobilized[ui] ? GridAction::idle : static_cast<GridAction>(choice[ui]);
            }
            GridStepResult step = grid_step(config_, state, joint);
            if (seen.insert(key(step.state)).second) {
                Child child;
                for (double r : step.rewards) child.step_team += r;
                child.bound = child.step_team + upper_bound(step.state);
                child.actions = joint;
                child.step = std::move(step);
                children.push_back(std::move(child));
            }
            int i = 0;
            for (; i < n; ++i) {
                const auto ui = static_cast<std::size_t>(i);
                if (state.immobilized[ui]) continue;
                if (++choice[ui] < kGridActionCount) break;
                choice[ui] = 0;
            }
            if (i == n) break;
        }
        std::stable_sort(children.begin(), children.end(),
                         [](const Child& a, const Child& b) { return a.bound > b.bound; });

        for (Child& child : children) {
            const double total = gained + child.step_team;
            if (gained + child.bound <= best_.team + kTolerance) break;
            const auto k = key(child.step.state);
            const auto it = visited_.find(k);
            if (it != visited_.end() && it->second >= total - kTolerance) continue;
            visited_[k] = total;
            for (std::size_t i = 0; i < per_agent.size(); ++i) per_agent[i] += child.step.rewards[i];
            path.push_back(child.actions);
            dfs(child.step.state, total, per_agent, path);
            path.pop_back();
            for (std::size_t i = 0; i < per_agent.size(); ++i) per_agent[i] -= child.step.rewards[i];
        }
    }

    const GridConfig& config_;
    OracleLimits limits_;
    OptimalReturn best_;
    std::size_t nodes_ = 0;
    std::unordered_map<std::uint64_t, double> visited_;
};

}  // namespace

OptimalReturn optimal_grid_return(const GridConfig& config, const std::vector<bool>& immobilized,
                                  const OracleLimits& limits) {
    validate(config);
    if (static_cast<int>(immobilized.size()) != config.n_agents()) {
        throw InvalidInput("immobilized flags must match the agent count");
    }
    if (config.width > limits.max_side || config.height > limits.max_side || config.n_agents() > limits.max_agents ||
        config.n_resources() > limits.max_resources || config.max_steps > limits.max_horizon) {
        throw CapacityError("grid instance exceeds the exhaustive-search limits");
    }
    if (config.consume_reward < 0.0 || config.step_penalty_per_resource > 0.0) {
        throw InvalidInput("grid oracle bound assumes a non-negative consume reward and a non-positive penalty");
    }
    GridWorldState root = grid_reset(config);
    root.immobilized = immobilized;
    Search search(config, limits);
    return search.run(root);
}

}  // namespace camarl::envs
