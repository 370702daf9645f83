#pragma once

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "camarl/neural/mlp.hpp"

namespace camarl::learners {

// All monomials of total degree <= degree over action_dim variables, ordered
// by degree, then lexicographically by exponent vector with the first
// variable's exponent highest. For degree 2 and two variables:
//   1, a1, a2, a1^2, a1 a2, a2^2
class PolynomialBasis {
public:
    PolynomialBasis(int action_dim, int degree);

    int action_dim() const { return action_dim_; }
    int degree() const { return degree_; }
    int size() const { return static_cast<int>(exponents_.size()); }
    const std::vector<std::vector<int>>& exponents() const { return exponents_; }

    // actions: action_dim x K. Returns K x size().
    Eigen::MatrixXd features(const Eigen::MatrixXd& actions) const;

private:
    int action_dim_;
    int degree_;
    std::vector<std::vector<int>> exponents_;
};

// Number of monomials of total degree <= degree in action_dim variables.
int coefficient_count(int action_dim, int degree);

// A state network emitting one coefficient per basis function.
struct FunctionalHead {
    PolynomialBasis basis;
    neural::MlpParameters network;

    int coefficient_count() const { return basis.size(); }
};

FunctionalHead make_functional_head(int obs_size, const std::vector<int>& hidden, neural::Activation activation,
                                    int action_dim, int degree, std::mt19937_64& rng);

// Q(a_k) = coefficients . phi(a_k) for each column a_k of `actions`.
Eigen::VectorXd functional_evaluate(const FunctionalHead& head, const Eigen::VectorXd& coefficients,
                                    const Eigen::MatrixXd& actions);

// K actions drawn uniformly from [-1, 1]^action_dim, one per column.
Eigen::MatrixXd sample_uniform_actions(int action_dim, int count, std::mt19937_64& rng);

}  // namespace camarl::learners
