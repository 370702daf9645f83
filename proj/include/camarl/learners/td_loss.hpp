#pragma once

#include <Eigen/Dense>

#include "camarl/relnet/relational_network.hpp"

namespace camarl::learners {

struct MixedTdLoss {
    double loss = 0.0;
    // dL/dQ_i for the taken action of agent i (row) in sample b (column).
    Eigen::MatrixXd q_gradient;
};

// Mean squared TD error over a batch.
//   predicted:  Q_i(s_b, a_ib), n_agents x B
//   next_max:   max over actions of the target Q_i(s'_b, .), n_agents x B
//   rewards:    n_agents x B (per-agent) or 1 x B (team reward)
//   done:       B flags; a terminal sample drops the bootstrap term
// Mixing per mode:
//   independent        sum over agents of (r_i + gamma * next_i - Q_i)^2, with r_i the
//                      team reward when only one is available
//   reward_relational  r_team from the graph over per-agent rewards, Q_tot = sum_i Q_i
//   value_relational   Q_tot and its target mixed through the graph, r_team = summed reward
MixedTdLoss mixed_td_loss(const Eigen::MatrixXd& predicted, const Eigen::MatrixXd& next_max,
                          const Eigen::MatrixXd& rewards, const Eigen::Array<bool, Eigen::Dynamic, 1>& done,
                          double gamma, const relnet::RelationalNetwork& graph, relnet::MixingMode mode);

}  // namespace camarl::learners
