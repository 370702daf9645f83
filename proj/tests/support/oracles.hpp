#pragma once

// Straight-line reference computations shared by the unit and acceptance
// tests. They deliberately avoid the library's own evaluation paths.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "camarl/neural/mlp.hpp"

namespace camarl::check {

inline double activate(neural::Activation a, double x) {
    switch (a) {
    case neural::Activation::relu:
        return x > 0.0 ? x : 0.0;
    case neural::Activation::tanh:
        return std::tanh(x);
    case neural::Activation::identity:
        return x;
    }
    return x;
}

// Scalar triple loop, no Eigen products.
inline std::vector<double> reference_forward(const neural::MlpParameters& p, const std::vector<double>& input) {
    std::vector<double> x = input;
    for (std::size_t l = 0; l < p.weights.size(); ++l) {
        const auto& w = p.weights[l];
        std::vector<double> y(static_cast<std::size_t>(w.rows()));
        for (Eigen::Index r = 0; r < w.rows(); ++r) {
            double acc = p.biases[l](r);
            for (Eigen::Index c = 0; c < w.cols(); ++c) acc += w(r, c) * x[static_cast<std::size_t>(c)];
            y[static_cast<std::size_t>(r)] = activate(p.activations[l], acc);
        }
        x = std::move(y);
    }
    return x;
}

// Double loop over edges, exactly as the aggregation is written down.
inline double brute_force_aggregate(const Eigen::MatrixXd& w, const std::vector<double>& values) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
        for (Eigen::Index j = 0; j < w.cols(); ++j) total += w(i, j) * values[static_cast<std::size_t>(j)];
    }
    return total;
}

inline double relative_error(double a, double b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

// Mixed relative / absolute comparison used for gradient checks: relative to
// the larger magnitude, with an absolute floor for entries near zero.
inline bool gradients_agree(double analytic, double numeric, double tol, double floor = 1e-7) {
    const double diff = std::abs(analytic - numeric);
    return diff <= tol * std::max(std::abs(analytic), std::abs(numeric)) || diff <= floor;
}

inline double central_difference(const std::function<double()>& f, double& parameter, double h) {
    const double saved = parameter;
    parameter = saved + h;
    const double plus = f();
    parameter = saved - h;
    const double minus = f();
    parameter = saved;
    return (plus - minus) / (2.0 * h);
}

}  // namespace camarl::check
