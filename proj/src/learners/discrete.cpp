#include "camarl/learners/discrete.hpp"

#include <cmath>

#include "camarl/errors.hpp"
#include "camarl/learners/td_loss.hpp"

namespace camarl::learners {

DiscreteLearner::DiscreteLearner(int n_agents, int obs_size, int n_actions, LearnerConfig config,
                                 std::mt19937_64& init_rng)
    : obs_size_(obs_size), n_actions_(n_actions), config_(std::move(config)) {
    validate(config_);
    if (n_agents < 1 || obs_size < 1 || n_actions < 1) throw InvalidInput("learner dimensions must be positive");
    std::vector<int> sizes{obs_size};
    sizes.insert(sizes.end(), config_.hidden_layers.begin(), config_.hidden_layers.end());
    sizes.push_back(n_actions);
    neural::AdamConfig adam;
    adam.learning_rate = config_.learning_rate;
    for (int i = 0; i < n_agents; ++i) {
        prediction_.push_back(neural::make_mlp(sizes, config_.hidden_activation, init_rng));
        target_.push_back(prediction_.back());
        optimizers_.push_back(neural::AdamState::create(prediction_.back(), adam));
    }
}

void DiscreteLearner::sync_targets() {
    for (std::size_t i = 0; i < prediction_.size(); ++i) neural::hard_sync(target_[i], prediction_[i]);
}

int greedy_action(const Eigen::VectorXd& q_values) {
    if (q_values.size() == 0) throw InvalidInput("no action values to choose from");
    int best = 0;
    for (Eigen::Index a = 0; a < q_values.size(); ++a) {
        if (!std::isfinite(q_values(a))) throw NumericError("non-finite action value", 0);
        if (q_values(a) > q_values(best)) best = static_cast<int>(a);
    }
    return best;
}

std::vector<int> select_actions_discrete(std::span<const neural::MlpParameters> nets,
                                         const Eigen::MatrixXd& observations, double epsilon, std::mt19937_64& rng) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw InvalidInput("epsilon must lie in [0, 1]");
    if (static_cast<Eigen::Index>(nets.size()) != observations.cols()) {
        throw InvalidInput("one observation column per agent network is required");
    }
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<int> actions(nets.size());
    for (std::size_t i = 0; i < nets.size(); ++i) {
        const int n_actions = nets[i].output_size();
        if (coin(rng) < epsilon) {
            actions[i] = std::uniform_int_distribution<int>(0, n_actions - 1)(rng);
        } else {
            const Eigen::VectorXd q = neural::mlp_predict(nets[i], observations.col(static_cast<Eigen::Index>(i)));
            try {
                actions[i] = greedy_action(q);
            } catch (const NumericError&) {
                throw NumericError("agent " + std::to_string(i) + " produced a non-finite Q-value",
                                   nets[i].num_layers() - 1);
            }
        }
    }
    return actions;
}

double train_on_batch_discrete(DiscreteLearner& learner, std::span<const DiscreteTransition* const> batch,
                               const relnet::RelationalNetwork& graph, relnet::MixingMode mode) {
    const int n = learner.n_agents();
    const auto b_count = static_cast<Eigen::Index>(batch.size());
    if (b_count == 0) throw InvalidInput("empty training batch");
    const Eigen::Index reward_rows = batch.front()->rewards.size();

    Eigen::MatrixXd predicted(n, b_count);
    Eigen::MatrixXd next_max(n, b_count);
    Eigen::MatrixXd rewards(reward_rows, b_count);
    Eigen::Array<bool, Eigen::Dynamic, 1> done(b_count);
    for (Eigen::Index b = 0; b < b_count; ++b) {
        const auto& t = *batch[static_cast<std::size_t>(b)];
        if (t.observations.cols() != n || t.actions.size() != n || t.rewards.size() != reward_rows) {
            throw InvalidInput("transition shape does not match the learner");
        }
        if ((t.actions.array() < 0).any() || (t.actions.array() >= learner.n_actions()).any()) {
            throw InvalidInput("transition holds an action index outside the action set");
        }
        rewards.col(b) = t.rewards;
        done(b) = t.done;
    }

    std::vector<neural::ForwardCache> caches;
    caches.reserve(static_cast<std::size_t>(n));
    Eigen::MatrixXd inputs(learner.obs_size(), b_count);
    for (int i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        for (Eigen::Index b = 0; b < b_count; ++b) inputs.col(b) = batch[static_cast<std::size_t>(b)]->observations.col(i);
        caches.push_back(neural::mlp_forward_batch(learner.prediction_nets()[ui], inputs));
        const Eigen::MatrixXd& q = caches.back().output();
        for (Eigen::Index b = 0; b < b_count; ++b) {
            predicted(i, b) = q(batch[static_cast<std::size_t>(b)]->actions(i), b);
        }
        for (Eigen::Index b = 0; b < b_count; ++b) {
            inputs.col(b) = batch[static_cast<std::size_t>(b)]->next_observations.col(i);
        }
        next_max.row(i) = neural::mlp_predict(learner.target_nets()[ui], inputs).colwise().maxCoeff();
    }

    const MixedTdLoss td =
        mixed_td_loss(predicted, next_max, rewards, done, learner.config().gamma, graph, mode);

    for (int i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        Eigen::MatrixXd output_grad = Eigen::MatrixXd::Zero(learner.n_actions(), b_count);
        for (Eigen::Index b = 0; b < b_count; ++b) {
            output_grad(batch[static_cast<std::size_t>(b)]->actions(i), b) = td.q_gradient(i, b);
        }
        const auto grads = neural::mlp_backward(learner.prediction_nets()[ui], caches[ui], output_grad);
        neural::adam_step(learner.optimizers()[ui], learner.prediction_nets()[ui], grads.parameters);
    }
    return td.loss;
}

std::optional<double> train_step_discrete(DiscreteLearner& learner, const ReplayMemory<DiscreteTransition>& memory,
                                          const relnet::RelationalNetwork& graph, relnet::MixingMode mode,
                                          std::mt19937_64& sampling_rng) {
    const auto batch_size = static_cast<std::size_t>(learner.config().batch_size);
    if (memory.size() < batch_size) return std::nullopt;
    const auto slots = memory.sample(batch_size, sampling_rng);
    std::vector<const DiscreteTransition*> batch;
    batch.reserve(slots.size());
    for (auto s : slots) batch.push_back(&memory[s]);
    return train_on_batch_discrete(learner, batch, graph, mode);
}

}  // namespace camarl::learners
