#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "camarl/errors.hpp"

namespace camarl::learners {

// One team step. Observations hold one column per agent. Rewards hold one
// entry per agent (grid) or a single team reward (crawler).
template <typename Actions>
struct Transition {
    Eigen::MatrixXd observations;
    Actions actions;
    Eigen::VectorXd rewards;
    Eigen::MatrixXd next_observations;
    bool done = false;
};

using DiscreteTransition = Transition<Eigen::VectorXi>;
// actions: action_dim x n_agents
using ContinuousTransition = Transition<Eigen::MatrixXd>;

// Fixed-capacity ring buffer; the oldest entry is overwritten first.
template <typename T>
class ReplayMemory {
public:
    explicit ReplayMemory(std::size_t capacity) : capacity_(capacity) {
        if (capacity == 0) throw InvalidInput("replay memory capacity must be positive");
        buffer_.reserve(std::min<std::size_t>(capacity, 1 << 16));
    }

    void push(T item) {
        if (buffer_.size() < capacity_) {
            buffer_.push_back(std::move(item));
        } else {
            buffer_[next_] = std::move(item);
        }
        next_ = (next_ + 1) % capacity_;
        ++insertions_;
    }

    std::size_t size() const { return buffer_.size(); }
    std::size_t capacity() const { return capacity_; }
    std::size_t insertions() const { return insertions_; }
    bool empty() const { return buffer_.empty(); }

    const T& operator[](std::size_t slot) const { return buffer_[slot]; }

    // i = 0 is the oldest stored entry.
    const T& chronological(std::size_t i) const {
        if (i >= buffer_.size()) throw InvalidInput("replay memory index out of range");
        const std::size_t start = buffer_.size() < capacity_ ? 0 : next_;
        return buffer_[(start + i) % capacity_];
    }

    // Uniform draws with replacement.
    std::vector<std::size_t> sample(std::size_t batch, std::mt19937_64& rng) const {
        if (buffer_.empty()) throw InvalidState("cannot sample an empty replay memory");
        std::uniform_int_distribution<std::size_t> pick(0, buffer_.size() - 1);
        std::vector<std::size_t> slots(batch);
        for (auto& s : slots) s = pick(rng);
        return slots;
    }

private:
    std::size_t capacity_;
    std::vector<T> buffer_;
    std::size_t next_ = 0;
    std::size_t insertions_ = 0;
};

}  // namespace camarl::learners
