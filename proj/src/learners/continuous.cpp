#include "camarl/learners/continuous.hpp"

#include <algorithm>
#include <cmath>

#include "camarl/errors.hpp"
#include "camarl/learners/td_loss.hpp"

namespace camarl::learners {

ContinuousLearner::ContinuousLearner(int n_agents, int obs_size, int action_dim, LearnerConfig config,
                                     std::mt19937_64& init_rng)
    : obs_size_(obs_size), action_dim_(action_dim), config_(std::move(config)) {
    validate(config_);
    if (n_agents < 1 || obs_size < 1 || action_dim < 1) throw InvalidInput("learner dimensions must be positive");
    neural::AdamConfig adam;
    adam.learning_rate = config_.learning_rate;
    for (int i = 0; i < n_agents; ++i) {
        heads_.push_back(make_functional_head(obs_size, config_.hidden_layers, config_.hidden_activation, action_dim,
                                              config_.basis_degree, init_rng));
        target_.push_back(heads_.back().network);
        optimizers_.push_back(neural::AdamState::create(heads_.back().network, adam));
    }
}

void ContinuousLearner::soft_update_targets() {
    for (std::size_t i = 0; i < heads_.size(); ++i) neural::soft_update(target_[i], heads_[i].network, config_.soft_tau);
}

Eigen::MatrixXd select_actions_continuous(std::span<const FunctionalHead> heads, const Eigen::MatrixXd& observations,
                                          double epsilon, int sample_count, std::mt19937_64& rng) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw InvalidInput("epsilon must lie in [0, 1]");
    if (sample_count < 1) throw InvalidInput("sample_count must be at least 1");
    if (static_cast<Eigen::Index>(heads.size()) != observations.cols()) {
        throw InvalidInput("one observation column per agent head is required");
    }
    if (heads.empty()) return {};
    const int dim = heads.front().basis.action_dim();
    Eigen::MatrixXd joint(dim, static_cast<Eigen::Index>(heads.size()));
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_real_distribution<double> noise(-kExplorationHalfWidth, kExplorationHalfWidth);
    for (std::size_t i = 0; i < heads.size(); ++i) {
        const auto& head = heads[i];
        const Eigen::VectorXd coefficients =
            neural::mlp_predict(head.network, observations.col(static_cast<Eigen::Index>(i)));
        const Eigen::MatrixXd candidates = sample_uniform_actions(dim, sample_count, rng);
        const Eigen::VectorXd q = functional_evaluate(head, coefficients, candidates);
        if (!q.allFinite()) {
            throw NumericError("agent " + std::to_string(i) + " produced a non-finite Q-value",
                               head.network.num_layers() - 1);
        }
        Eigen::Index best = 0;
        for (Eigen::Index k = 1; k < q.size(); ++k) {
            if (q(k) > q(best)) best = k;
        }
        Eigen::VectorXd action = candidates.col(best);
        if (coin(rng) < epsilon) {
            for (int d = 0; d < dim; ++d) action(d) = std::clamp(action(d) + noise(rng), -1.0, 1.0);
        }
        joint.col(static_cast<Eigen::Index>(i)) = action;
    }
    return joint;
}

Eigen::RowVectorXd sampled_max(const PolynomialBasis& basis, const Eigen::MatrixXd& coefficients,
                               const Eigen::MatrixXd& candidates) {
    const Eigen::MatrixXd values = basis.features(candidates) * coefficients;
    return values.colwise().maxCoeff();
}

double train_on_batch_continuous(ContinuousLearner& learner, std::span<const ContinuousTransition* const> batch,
                                 const relnet::RelationalNetwork& graph, relnet::MixingMode mode, int sample_count,
                                 std::mt19937_64& sampling_rng) {
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
        if (t.observations.cols() != n || t.actions.cols() != n || t.actions.rows() != learner.action_dim() ||
            t.rewards.size() != reward_rows) {
            throw InvalidInput("transition shape does not match the learner");
        }
        rewards.col(b) = t.rewards;
        done(b) = t.done;
    }

    std::vector<neural::ForwardCache> caches;
    std::vector<Eigen::MatrixXd> taken_features;
    caches.reserve(static_cast<std::size_t>(n));
    Eigen::MatrixXd inputs(learner.obs_size(), b_count);
    Eigen::MatrixXd taken(learner.action_dim(), b_count);
    for (int i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        const FunctionalHead& head = learner.heads()[ui];
        for (Eigen::Index b = 0; b < b_count; ++b) {
            inputs.col(b) = batch[static_cast<std::size_t>(b)]->observations.col(i);
            taken.col(b) = batch[static_cast<std::size_t>(b)]->actions.col(i);
        }
        caches.push_back(neural::mlp_forward_batch(head.network, inputs));
        taken_features.push_back(head.basis.features(taken));  // B x C
        predicted.row(i) = (taken_features.back().array() * caches.back().output().transpose().array())
                               .rowwise()
                               .sum()
                               .transpose();

        for (Eigen::Index b = 0; b < b_count; ++b) {
            inputs.col(b) = batch[static_cast<std::size_t>(b)]->next_observations.col(i);
        }
        const Eigen::MatrixXd target_coefficients = neural::mlp_predict(learner.target_nets()[ui], inputs);
        const Eigen::MatrixXd candidates = sample_uniform_actions(learner.action_dim(), sample_count, sampling_rng);
        next_max.row(i) = sampled_max(head.basis, target_coefficients, candidates);
    }

    const MixedTdLoss td =
        mixed_td_loss(predicted, next_max, rewards, done, learner.config().gamma, graph, mode);

    for (int i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        // dL/dcoefficients = dL/dQ * phi(a)
        const Eigen::MatrixXd output_grad =
            (taken_features[ui].array().colwise() * td.q_gradient.row(i).transpose().array()).matrix().transpose();
        const auto grads = neural::mlp_backward(learner.heads()[ui].network, caches[ui], output_grad);
        neural::adam_step(learner.optimizers()[ui], learner.heads()[ui].network, grads.parameters);
    }
    return td.loss;
}

std::optional<double> train_step_continuous(ContinuousLearner& learner,
                                            const ReplayMemory<ContinuousTransition>& memory,
                                            const relnet::RelationalNetwork& graph, relnet::MixingMode mode,
                                            int sample_count, std::mt19937_64& sampling_rng) {
    const auto batch_size = static_cast<std::size_t>(learner.config().batch_size);
    if (memory.size() < batch_size) return std::nullopt;
    const auto slots = memory.sample(batch_size, sampling_rng);
    std::vector<const ContinuousTransition*> batch;
    batch.reserve(slots.size());
    for (auto s : slots) batch.push_back(&memory[s]);
    const double loss = train_on_batch_continuous(learner, batch, graph, mode, sample_count, sampling_rng);
    learner.soft_update_targets();
    return loss;
}

}  // namespace camarl::learners
