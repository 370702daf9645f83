#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace camarl::relnet {

// How inter-agent relationships enter the TD target.
enum class MixingMode {
    independent,        // per-agent losses, no mixing
    reward_relational,  // team reward mixed through the graph, Q_tot = sum of Q_i
    value_relational,   // Q_tot mixed through the graph, team reward from the environment
};

std::string to_string(MixingMode mode);
MixingMode mixing_mode_from_string(const std::string& name);

struct Violation {
    enum class Kind { shape, out_of_range, non_finite };
    Kind kind;
    int row = -1;
    int col = -1;
    std::string message;
};

// Total check over raw data: returns every shape defect and every entry outside [0, 1].
std::vector<Violation> validate(int n_agents, const Eigen::MatrixXd& weights);

// Directed weighted graph over agents. weight(i, j) is the importance agent i
// places on agent j; an absent edge is stored as 0. Immutable once built.
class RelationalNetwork {
public:
    // Throws InvalidInput listing the violations if the data is not a valid graph.
    RelationalNetwork(std::string label, Eigen::MatrixXd weights);

    static RelationalNetwork identity(int n_agents);
    static RelationalNetwork all_ones(int n_agents);
    // Every other agent i keeps w_ii = self_weight and gains w_i,focus = focus_weight;
    // the focus agent keeps only its self-loop at 1.
    static RelationalNetwork focus_on(int n_agents, int focus, double self_weight = 0.3,
                                      double focus_weight = 0.7);
    // All-ones graph with the column of `dropped` zeroed.
    static RelationalNetwork drop_agent(int n_agents, int dropped);

    int n_agents() const { return static_cast<int>(weights_.rows()); }
    double weight(int i, int j) const { return weights_(i, j); }
    const Eigen::MatrixXd& weights() const { return weights_; }
    const std::string& label() const { return label_; }

private:
    std::string label_;
    Eigen::MatrixXd weights_;
};

// sum_i sum_j w_ij r_j, evaluated as sum_j (sum_i w_ij) r_j with j ascending.
double aggregate_rewards(const RelationalNetwork& net, std::span<const double> rewards);

// sum_i sum_j w_ij Q_j; same evaluation order as aggregate_rewards.
double aggregate_values(const RelationalNetwork& net, std::span<const double> q_values);

// Column sums c_j = sum_i w_ij, i.e. d(aggregate)/d(input_j).
Eigen::VectorXd aggregation_gradient(const RelationalNetwork& net);

// JSON: {"label": ..., "n_agents": N, "weights": [row-major N*N reals]}
nlohmann::json to_json(const RelationalNetwork& net);
RelationalNetwork from_json(const nlohmann::json& j);
RelationalNetwork load_graph(const std::filesystem::path& path);
void save_graph(const RelationalNetwork& net, const std::filesystem::path& path);

// Resolves built-in labels: "identity", "all_ones", "focus_<k>", "drop_<k>".
// Returns false if the label is not a built-in pattern.
bool builtin_graph(const std::string& label, int n_agents, RelationalNetwork& out);

}  // namespace camarl::relnet
