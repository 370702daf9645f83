#include "camarl/relnet/relational_network.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "camarl/errors.hpp"

namespace camarl::relnet {

std::string to_string(MixingMode mode) {
    switch (mode) {
    case MixingMode::independent:
        return "independent";
    case MixingMode::reward_relational:
        return "reward_relational";
    case MixingMode::value_relational:
        return "value_relational";
    }
    return "independent";
}

MixingMode mixing_mode_from_string(const std::string& name) {
    if (name == "independent") return MixingMode::independent;
    if (name == "reward_relational") return MixingMode::reward_relational;
    if (name == "value_relational") return MixingMode::value_relational;
    throw InvalidInput("unknown mixing mode '" + name + "'");
}

std::vector<Violation> validate(int n_agents, const Eigen::MatrixXd& weights) {
    std::vector<Violation> violations;
    if (n_agents <= 0) {
        violations.push_back({Violation::Kind::shape, -1, -1, "n_agents must be positive"});
    }
    if (weights.rows() != weights.cols()) {
        std::ostringstream msg;
        msg << "weight matrix is " << weights.rows() << "x" << weights.cols() << ", not square";
        violations.push_back({Violation::Kind::shape, -1, -1, msg.str()});
    } else if (weights.rows() != n_agents) {
        std::ostringstream msg;
        msg << "weight matrix side " << weights.rows() << " differs from n_agents " << n_agents;
        violations.push_back({Violation::Kind::shape, -1, -1, msg.str()});
    }
    for (Eigen::Index i = 0; i < weights.rows(); ++i) {
        for (Eigen::Index j = 0; j < weights.cols(); ++j) {
            const double w = weights(i, j);
            const int r = static_cast<int>(i);
            const int c = static_cast<int>(j);
            std::ostringstream msg;
            if (!std::isfinite(w)) {
                msg << "w(" << r << "," << c << ") is not finite";
                violations.push_back({Violation::Kind::non_finite, r, c, msg.str()});
            } else if (w < 0.0 || w > 1.0) {
                msg << "w(" << r << "," << c << ") = " << w << " outside [0, 1]";
                violations.push_back({Violation::Kind::out_of_range, r, c, msg.str()});
            }
        }
    }
    return violations;
}

RelationalNetwork::RelationalNetwork(std::string label, Eigen::MatrixXd weights)
    : label_(std::move(label)), weights_(std::move(weights)) {
    const auto violations = validate(static_cast<int>(weights_.rows()), weights_);
    if (!violations.empty()) {
        std::string msg = "invalid relational network '" + label_ + "':";
        for (const auto& v : violations) msg += " " + v.message + ";";
        throw InvalidInput(msg);
    }
}

RelationalNetwork RelationalNetwork::identity(int n_agents) {
    return {"identity", Eigen::MatrixXd::Identity(n_agents, n_agents)};
}

RelationalNetwork RelationalNetwork::all_ones(int n_agents) {
    return {"all_ones", Eigen::MatrixXd::Ones(n_agents, n_agents)};
}

RelationalNetwork RelationalNetwork::focus_on(int n_agents, int focus, double self_weight,
                                              double focus_weight) {
    if (focus < 0 || focus >= n_agents) throw InvalidInput("focus agent index out of range");
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n_agents, n_agents);
    for (int i = 0; i < n_agents; ++i) {
        if (i == focus) {
            w(i, i) = 1.0;
        } else {
            w(i, i) = self_weight;
            w(i, focus) = focus_weight;
        }
    }
    return {"focus_" + std::to_string(focus), std::move(w)};
}

RelationalNetwork RelationalNetwork::drop_agent(int n_agents, int dropped) {
    if (dropped < 0 || dropped >= n_agents) throw InvalidInput("dropped agent index out of range");
    Eigen::MatrixXd w = Eigen::MatrixXd::Ones(n_agents, n_agents);
    w.col(dropped).setZero();
    return {"drop_" + std::to_string(dropped), std::move(w)};
}

Eigen::VectorXd aggregation_gradient(const RelationalNetwork& net) {
    const int n = net.n_agents();
    Eigen::VectorXd c(n);
    for (int j = 0; j < n; ++j) {
        double sum = 0.0;
        for (int i = 0; i < n; ++i) sum += net.weight(i, j);
        c(j) = sum;
    }
    return c;
}

namespace {

double weighted_sum(const RelationalNetwork& net, std::span<const double> values, const char* what) {
    if (static_cast<int>(values.size()) != net.n_agents()) {
        throw InvalidInput(std::string(what) + " has " + std::to_string(values.size()) +
                           " entries for a graph of " + std::to_string(net.n_agents()) + " agents");
    }
    const Eigen::VectorXd c = aggregation_gradient(net);
    double total = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) total += c(static_cast<Eigen::Index>(j)) * values[j];
    return total;
}

}  // namespace

double aggregate_rewards(const RelationalNetwork& net, std::span<const double> rewards) {
    return weighted_sum(net, rewards, "reward vector");
}

double aggregate_values(const RelationalNetwork& net, std::span<const double> q_values) {
    return weighted_sum(net, q_values, "value vector");
}

nlohmann::json to_json(const RelationalNetwork& net) {
    nlohmann::json weights = nlohmann::json::array();
    for (int i = 0; i < net.n_agents(); ++i) {
        for (int j = 0; j < net.n_agents(); ++j) weights.push_back(net.weight(i, j));
    }
    return {{"label", net.label()}, {"n_agents", net.n_agents()}, {"weights", weights}};
}

RelationalNetwork from_json(const nlohmann::json& j) {
    try {
        const auto label = j.at("label").get<std::string>();
        const int n = j.at("n_agents").get<int>();
        const auto& flat = j.at("weights");
        if (n <= 0) throw InvalidInput("graph '" + label + "': n_agents must be positive");
        if (!flat.is_array() || flat.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
            throw InvalidInput("graph '" + label + "': weights must be a row-major array of n_agents^2 reals");
        }
        Eigen::MatrixXd w(n, n);
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) w(r, c) = flat[static_cast<std::size_t>(r * n + c)].get<double>();
        }
        return {label, std::move(w)};
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("malformed graph JSON: ") + e.what());
    }
}

RelationalNetwork load_graph(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open graph file " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput("graph file " + path.string() + ": " + e.what());
    }
    return from_json(j);
}

void save_graph(const RelationalNetwork& net, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write graph file " + path.string());
    out << to_json(net).dump(2) << '\n';
}

bool builtin_graph(const std::string& label, int n_agents, RelationalNetwork& out) {
    auto suffix_index = [&](const std::string& prefix, int& index) {
        if (label.rfind(prefix, 0) != 0 || label.size() == prefix.size()) return false;
        const std::string digits = label.substr(prefix.size());
        if (digits.find_first_not_of("0123456789") != std::string::npos) return false;
        index = std::stoi(digits);
        return true;
    };
    int index = 0;
    if (label == "identity") {
        out = RelationalNetwork::identity(n_agents);
    } else if (label == "all_ones") {
        out = RelationalNetwork::all_ones(n_agents);
    } else if (suffix_index("focus_", index)) {
        out = RelationalNetwork::focus_on(n_agents, index);
    } else if (suffix_index("drop_", index)) {
        out = RelationalNetwork::drop_agent(n_agents, index);
    } else {
        return false;
    }
    return true;
}

}  // namespace camarl::relnet
