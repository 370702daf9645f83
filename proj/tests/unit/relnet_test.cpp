#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "camarl/errors.hpp"
#include "camarl/relnet/relational_network.hpp"
#include "oracles.hpp"

using namespace camarl;
using namespace camarl::relnet;

namespace {

Eigen::MatrixXd random_weights(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Eigen::MatrixXd w(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w(i, j) = u(rng) < 0.3 ? 0.0 : u(rng);
    return w;
}

std::vector<double> random_values(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return v;
}

}  // namespace

TEST(Validate, IdentityIsClean) { EXPECT_TRUE(validate(3, Eigen::MatrixXd::Identity(3, 3)).empty()); }

TEST(Validate, OutOfRangeEntryIsNamed) {
    Eigen::MatrixXd w = Eigen::MatrixXd::Identity(2, 2);
    w(0, 1) = 1.5;
    const auto v = validate(2, w);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].kind, Violation::Kind::out_of_range);
    EXPECT_EQ(v[0].row, 0);
    EXPECT_EQ(v[0].col, 1);
}

TEST(Validate, ReportsEveryViolation) {
    Eigen::MatrixXd w = Eigen::MatrixXd::Identity(3, 3);
    w(0, 2) = -0.1;
    w(2, 1) = std::numeric_limits<double>::infinity();
    w(1, 1) = 2.0;
    EXPECT_EQ(validate(3, w).size(), 3u);
}

TEST(Validate, NonSquareIsShapeViolation) {
    const auto v = validate(2, Eigen::MatrixXd::Zero(2, 3));
    ASSERT_FALSE(v.empty());
    EXPECT_EQ(v[0].kind, Violation::Kind::shape);
    EXPECT_THROW(RelationalNetwork("bad", Eigen::MatrixXd::Zero(2, 3)), InvalidInput);
}

TEST(AggregateRewards, IdentitySumsRewards) {
    const std::vector<double> r{3.0, 5.0};
    EXPECT_EQ(aggregate_rewards(RelationalNetwork::identity(2), r), 8.0);
}

TEST(AggregateRewards, InlineTwoAgentExample) {
    Eigen::MatrixXd w(2, 2);
    w << 0.3, 0.7, 0.0, 1.0;
    const std::vector<double> r{1.0, 2.0};
    EXPECT_NEAR(aggregate_rewards(RelationalNetwork("example", w), r), 3.7, 1e-15);
}

TEST(AggregateRewards, ZeroRewardsGiveZero) {
    std::mt19937_64 rng(1);
    const std::vector<double> zeros(5, 0.0);
    EXPECT_EQ(aggregate_rewards(RelationalNetwork("r", random_weights(5, rng)), zeros), 0.0);
}

TEST(AggregateRewards, LengthMismatchIsRejected) {
    const std::vector<double> r{1.0, 2.0, 3.0};
    EXPECT_THROW(aggregate_rewards(RelationalNetwork::identity(2), r), InvalidInput);
    EXPECT_THROW(aggregate_values(RelationalNetwork::identity(2), r), InvalidInput);
}

TEST(AggregateValues, IdentityEqualsPlainSumExactly) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + trial % 8;
        const auto q = random_values(n, rng);
        double sum = 0.0;
        for (double v : q) sum += v;
        EXPECT_EQ(aggregate_values(RelationalNetwork::identity(n), q), sum);
    }
}

TEST(AggregateValues, AllOnesFourAgents) {
    const std::vector<double> q{1.0, 2.0, 3.0, 4.0};
    const auto net = RelationalNetwork::all_ones(4);
    EXPECT_EQ(aggregate_values(net, q), 40.0);
    EXPECT_EQ(check::brute_force_aggregate(net.weights(), q), 40.0);
}

TEST(AggregateValues, ZeroColumnIgnoresThatAgent) {
    const auto net = RelationalNetwork::drop_agent(4, 2);
    std::vector<double> q{1.0, 2.0, 3.0, 4.0};
    const double base = aggregate_values(net, q);
    q[2] = -1e6;
    EXPECT_EQ(aggregate_values(net, q), base);
}

TEST(AggregateValues, MatchesBruteForceAndIsLinear) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 1 + trial % 16;
        const RelationalNetwork net("r", random_weights(n, rng));
        const auto x = random_values(n, rng);
        const auto y = random_values(n, rng);
        const double a = coef(rng), b = coef(rng);
        std::vector<double> combo(n);
        for (int i = 0; i < n; ++i) combo[i] = a * x[i] + b * y[i];
        for (auto f : {&aggregate_values, &aggregate_rewards}) {
            const double lhs = f(net, combo);
            const double rhs = a * f(net, x) + b * f(net, y);
            EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(rhs)));
            const double brute = check::brute_force_aggregate(net.weights(), x);
            EXPECT_LE(std::abs(f(net, x) - brute), 1e-12 * std::max(1.0, std::abs(brute)));
        }
        const Eigen::VectorXd c = aggregation_gradient(net);
        const double dot = c.dot(Eigen::Map<const Eigen::VectorXd>(x.data(), n));
        EXPECT_LE(std::abs(aggregate_values(net, x) - dot), 1e-12 * std::max(1.0, std::abs(dot)));
    }
}

TEST(AggregationGradient, ColumnSums) {
    EXPECT_EQ(aggregation_gradient(RelationalNetwork::identity(3)), Eigen::VectorXd::Ones(3));
    EXPECT_EQ(aggregation_gradient(RelationalNetwork::all_ones(4)), Eigen::VectorXd::Constant(4, 4.0));
    const Eigen::VectorXd dropped = aggregation_gradient(RelationalNetwork::drop_agent(4, 0));
    EXPECT_EQ(dropped(0), 0.0);
    EXPECT_EQ(dropped(1), 4.0);
}

TEST(Builtins, FocusGraphWeights) {
    const auto net = RelationalNetwork::focus_on(4, 3);
    EXPECT_EQ(net.label(), "focus_3");
    for (int i = 0; i < 3; ++i) {
        EXPECT_EQ(net.weight(i, i), 0.3);
        EXPECT_EQ(net.weight(i, 3), 0.7);
    }
    EXPECT_EQ(net.weight(3, 3), 1.0);
    EXPECT_EQ(net.weights().sum(), 3 * 1.0 + 1.0);
    const Eigen::VectorXd c = aggregation_gradient(net);
    EXPECT_NEAR(c(3), 3 * 0.7 + 1.0, 1e-15);
}

TEST(Builtins, LabelsResolve) {
    RelationalNetwork out = RelationalNetwork::identity(1);
    EXPECT_TRUE(builtin_graph("drop_0", 4, out));
    EXPECT_EQ(out.weights().col(0).sum(), 0.0);
    EXPECT_EQ(out.weights().col(1).sum(), 4.0);
    EXPECT_TRUE(builtin_graph("identity", 3, out));
    EXPECT_EQ(out.n_agents(), 3);
    EXPECT_FALSE(builtin_graph("mystery", 3, out));
    EXPECT_THROW(builtin_graph("focus_9", 4, out), InvalidInput);
}

TEST(GraphFiles, JsonRoundTrip) {
    std::mt19937_64 rng(4);
    const RelationalNetwork net("custom", random_weights(5, rng));
    const auto path = std::filesystem::temp_directory_path() / "camarl_graph_roundtrip.json";
    save_graph(net, path);
    const auto loaded = load_graph(path);
    std::filesystem::remove(path);
    EXPECT_EQ(loaded.label(), "custom");
    EXPECT_EQ(loaded.weights(), net.weights());
}

TEST(GraphFiles, InvalidWeightsAreRejected) {
    nlohmann::json j{{"label", "bad"}, {"n_agents", 2}, {"weights", {1.0, 0.0, 2.0, 1.0}}};
    EXPECT_THROW(from_json(j), InvalidInput);
    j["weights"] = {1.0, 0.0, 1.0};
    EXPECT_THROW(from_json(j), InvalidInput);
}
