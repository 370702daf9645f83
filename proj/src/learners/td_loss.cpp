#include "camarl/learners/td_loss.hpp"

#include <vector>

#include "camarl/errors.hpp"

namespace camarl::learners {

using relnet::MixingMode;

MixedTdLoss mixed_td_loss(const Eigen::MatrixXd& predicted, const Eigen::MatrixXd& next_max,
                          const Eigen::MatrixXd& rewards, const Eigen::Array<bool, Eigen::Dynamic, 1>& done,
                          double gamma, const relnet::RelationalNetwork& graph, MixingMode mode) {
    const Eigen::Index n = predicted.rows();
    const Eigen::Index batch = predicted.cols();
    if (batch == 0) throw InvalidInput("empty training batch");
    if (next_max.rows() != n || next_max.cols() != batch || rewards.cols() != batch || done.size() != batch) {
        throw InvalidInput("TD loss inputs disagree on batch shape");
    }
    if (rewards.rows() != n && rewards.rows() != 1) throw InvalidInput("rewards must be per-agent or a single team row");
    if (mode != MixingMode::independent && graph.n_agents() != n) {
        throw InvalidInput("relational network size differs from the agent count");
    }
    if (mode == MixingMode::reward_relational && rewards.rows() != n) {
        throw InvalidInput("reward-relational mixing needs per-agent rewards");
    }

    MixedTdLoss out;
    out.q_gradient.resize(n, batch);
    const auto denom = static_cast<double>(batch);
    const Eigen::VectorXd coefficients =
        mode == MixingMode::value_relational ? relnet::aggregation_gradient(graph) : Eigen::VectorXd::Ones(n);
    std::vector<double> column(static_cast<std::size_t>(n));
    auto col_values = [&](const Eigen::MatrixXd& m, Eigen::Index b) {
        for (Eigen::Index i = 0; i < n; ++i) column[static_cast<std::size_t>(i)] = m(i, b);
        return std::span<const double>(column);
    };

    double total = 0.0;
    for (Eigen::Index b = 0; b < batch; ++b) {
        const double bootstrap = done(b) ? 0.0 : gamma;
        if (mode == MixingMode::independent) {
            for (Eigen::Index i = 0; i < n; ++i) {
                const double r = rewards.rows() == n ? rewards(i, b) : rewards(0, b);
                const double delta = r + bootstrap * next_max(i, b) - predicted(i, b);
                total += delta * delta;
                out.q_gradient(i, b) = -2.0 * delta / denom;
            }
            continue;
        }

        double r_team = 0.0;
        double q_tot = 0.0;
        double target_tot = 0.0;
        if (mode == MixingMode::reward_relational) {
            r_team = relnet::aggregate_rewards(graph, col_values(rewards, b));
            for (Eigen::Index i = 0; i < n; ++i) q_tot += predicted(i, b);
            for (Eigen::Index i = 0; i < n; ++i) target_tot += next_max(i, b);
        } else {
            for (Eigen::Index i = 0; i < rewards.rows(); ++i) r_team += rewards(i, b);
            q_tot = relnet::aggregate_values(graph, col_values(predicted, b));
            target_tot = relnet::aggregate_values(graph, col_values(next_max, b));
        }
        const double delta = r_team + bootstrap * target_tot - q_tot;
        total += delta * delta;
        const double d_qtot = -2.0 * delta / denom;
        for (Eigen::Index i = 0; i < n; ++i) out.q_gradient(i, b) = coefficients(i) * d_qtot;
    }
    out.loss = total / denom;
    return out;
}

}  // namespace camarl::learners
