#include "camarl/learners/functional.hpp"

#include <functional>
#include <string>

#include "camarl/errors.hpp"

namespace camarl::learners {

PolynomialBasis::PolynomialBasis(int action_dim, int degree) : action_dim_(action_dim), degree_(degree) {
    if (action_dim < 1 || degree < 0) throw InvalidInput("polynomial basis needs action_dim >= 1, degree >= 0");
    std::vector<int> exponent(static_cast<std::size_t>(action_dim), 0);
    // Lexicographically descending exponent vectors of a fixed total degree.
    std::function<void(int, int)> fill = [&](int var, int left) {
        if (var == action_dim - 1) {
            exponent[static_cast<std::size_t>(var)] = left;
            exponents_.push_back(exponent);
            return;
        }
        for (int e = left; e >= 0; --e) {
            exponent[static_cast<std::size_t>(var)] = e;
            fill(var + 1, left - e);
        }
    };
    for (int total = 0; total <= degree; ++total) fill(0, total);
}

Eigen::MatrixXd PolynomialBasis::features(const Eigen::MatrixXd& actions) const {
    if (actions.rows() != action_dim_) {
        throw InvalidInput("actions have dimension " + std::to_string(actions.rows()) + ", basis expects " +
                           std::to_string(action_dim_));
    }
    const Eigen::Index k = actions.cols();
    Eigen::MatrixXd phi(k, size());
    for (Eigen::Index s = 0; s < k; ++s) {
        for (int f = 0; f < size(); ++f) {
            double value = 1.0;
            const auto& e = exponents_[static_cast<std::size_t>(f)];
            for (int d = 0; d < action_dim_; ++d) {
                for (int p = 0; p < e[static_cast<std::size_t>(d)]; ++p) value *= actions(d, s);
            }
            phi(s, f) = value;
        }
    }
    return phi;
}

int coefficient_count(int action_dim, int degree) {
    // C(action_dim + degree, degree)
    long result = 1;
    for (int i = 1; i <= degree; ++i) result = result * (action_dim + i) / i;
    return static_cast<int>(result);
}

FunctionalHead make_functional_head(int obs_size, const std::vector<int>& hidden, neural::Activation activation,
                                    int action_dim, int degree, std::mt19937_64& rng) {
    PolynomialBasis basis(action_dim, degree);
    std::vector<int> sizes{obs_size};
    sizes.insert(sizes.end(), hidden.begin(), hidden.end());
    sizes.push_back(basis.size());
    return {std::move(basis), neural::make_mlp(sizes, activation, rng)};
}

Eigen::VectorXd functional_evaluate(const FunctionalHead& head, const Eigen::VectorXd& coefficients,
                                    const Eigen::MatrixXd& actions) {
    if (coefficients.size() != head.coefficient_count()) {
        throw InvalidInput("expected " + std::to_string(head.coefficient_count()) + " coefficients, got " +
                           std::to_string(coefficients.size()));
    }
    return head.basis.features(actions) * coefficients;
}

Eigen::MatrixXd sample_uniform_actions(int action_dim, int count, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXd actions(action_dim, count);
    for (int k = 0; k < count; ++k) {
        for (int d = 0; d < action_dim; ++d) actions(d, k) = u(rng);
    }
    return actions;
}

}  // namespace camarl::learners
