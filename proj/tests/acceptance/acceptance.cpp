// Acceptance suite. Prints one PASS/FAIL line per criterion and a closing tally.
//
//   camarl_acceptance [--only 1,4] [--workdir DIR] [--reuse] [--allow-fail 5]
//
// Training-based criteria write their runs under --workdir. With --reuse, a
// seed directory whose config.json matches and whose metrics reach the last
// episode is read back instead of retrained.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "camarl/envs/crawler.hpp"
#include "camarl/envs/environment.hpp"
#include "camarl/envs/grid_oracle.hpp"
#include "camarl/harness/config.hpp"
#include "camarl/harness/experiment.hpp"
#include "camarl/harness/metrics.hpp"
#include "camarl/harness/summary.hpp"
#include "camarl/learners/continuous.hpp"
#include "camarl/learners/discrete.hpp"
#include "camarl/learners/functional.hpp"
#include "camarl/relnet/relational_network.hpp"
#include "gradient_check.hpp"
#include "oracles.hpp"
#include "vdn_reference.hpp"

using namespace camarl;
using namespace camarl::harness;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Settings {
    fs::path workdir;
    bool reuse = false;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v, int precision = 4) {
    std::ostringstream os;
    os.precision(precision);
    os << v;
    return os.str();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------- training runs

bool reusable(const ExperimentConfig& config, std::uint64_t seed) {
    const auto dir = seed_directory(config, seed);
    if (!fs::exists(dir / "config.json") || !fs::exists(dir / "metrics.csv")) return false;
    auto expected = config;
    expected.seeds = {seed};
    // The workdir may be given relative or absolute, so the output path is not compared.
    auto stored = nlohmann::json::parse(slurp(dir / "config.json"));
    auto wanted = to_json(expected);
    stored.erase("output_dir");
    wanted.erase("output_dir");
    if (stored != wanted) return false;
    for (const auto& row : read_metrics(dir / "metrics.csv")) {
        if (row.phase == "final" && row.episode == config.total_episodes) return true;
    }
    return false;
}

std::map<std::uint64_t, std::vector<MetricRow>> train_all(const ExperimentConfig& config, const Settings& settings) {
    // Runs produced earlier in this process are always read back.
    static std::set<fs::path> trained_here;
    prepare_output(config);
    std::map<std::uint64_t, std::vector<MetricRow>> out;
    for (auto seed : config.seeds) {
        const auto dir = seed_directory(config, seed);
        if (!((settings.reuse || trained_here.count(dir)) && reusable(config, seed))) {
            const auto start = Clock::now();
            RunOptions options;
            options.write_checkpoint = false;
            run_seed(config, seed, options);
            std::cerr << "  trained " << to_string(config.learner) << " seed " << seed << " in "
                      << fmt(seconds_since(start), 3) << " s\n";
            trained_here.insert(dir);
        }
        out[seed] = read_metrics(dir / "metrics.csv");
    }
    return out;
}

double team_value(const std::vector<MetricRow>& rows, long episode, const std::string& phase,
                  const std::string& metric) {
    for (const auto& r : rows) {
        if (r.episode == episode && r.phase == phase && r.agent == "team" && r.metric == metric) return r.value;
    }
    throw std::runtime_error("missing " + phase + " " + metric + " at episode " + std::to_string(episode));
}

// Greedy checkpoints (periodic and final) in (from, to], in episode order.
struct GreedyPoint {
    long episode;
    double team_return;
    double resources_left;
};

std::vector<GreedyPoint> greedy_points(const std::vector<MetricRow>& rows, long from, long to) {
    std::vector<GreedyPoint> points;
    for (const auto& r : rows) {
        if ((r.phase == "eval" || r.phase == "final") && r.agent == "team" && r.metric == "return" &&
            r.episode > from && r.episode <= to) {
            points.push_back({r.episode, r.value, team_value(rows, r.episode, r.phase, "resources_remaining")});
        }
    }
    return points;
}

// ---------------------------------------------------------------- criteria

Outcome gradient_correctness() {
    const auto start = Clock::now();
    std::mt19937_64 rng(101);
    std::normal_distribution<double> normal(0.0, 1.0);
    struct Arch {
        std::string name;
        std::vector<int> sizes;
        neural::Activation act;
    };
    const std::vector<Arch> archs{{"2x128 relu", {14, 128, 128, 5}, neural::Activation::relu},
                                  {"3x256 tanh", {9, 256, 256, 256, 6}, neural::Activation::tanh}};
    std::string detail;
    bool pass = true;
    for (const auto& arch : archs) {
        check::GradientCheckReport total;
        check::DirectionalReport directional;
        for (int draw = 0; draw < 100; ++draw) {
            auto p = neural::make_mlp(arch.sizes, arch.act, rng);
            for (auto& b : p.biases) b = b.unaryExpr([&](double) { return 0.1 * normal(rng); });
            Eigen::VectorXd x(arch.sizes.front());
            for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = normal(rng);
            const auto r = check::check_mlp_gradients(p, x, rng, 64);
            total.checked += r.checked;
            total.skipped_kinks += r.skipped_kinks;
            if (r.failed > 0 && total.failed == 0) total.first_failure = r.first_failure;
            total.failed += r.failed;
            total.worst_relative = std::max(total.worst_relative, r.worst_relative);
            check::check_directional(p, x, rng, 4, directional);
        }
        pass = pass && total.failed == 0 && directional.failed == 0 && total.checked > 0;
        detail += arch.name + ": " + std::to_string(total.checked) + " entries (" + std::to_string(total.failed) +
                  " bad, " + std::to_string(total.skipped_kinks) + " kinks skipped, worst rel " +
                  fmt(total.worst_relative, 2) + "), " + std::to_string(directional.checked) + " directions (" +
                  std::to_string(directional.failed) + " bad); ";
        if (!total.first_failure.empty()) detail += "first failure " + total.first_failure + "; ";
        if (!directional.first_failure.empty()) detail += directional.first_failure + "; ";
    }
    const double elapsed = seconds_since(start);
    pass = pass && elapsed < 60.0;
    return {pass, detail + fmt(elapsed, 3) + " s"};
}

std::vector<learners::DiscreteTransition> random_grid_transitions(int count, std::mt19937_64& rng) {
    envs::GridEnvironment env(envs::GridConfig::default_layout());
    std::uniform_int_distribution<int> pick(0, envs::kGridActionCount - 1);
    std::vector<learners::DiscreteTransition> out;
    env.reset();
    while (static_cast<int>(out.size()) < count) {
        if (env.done()) env.reset();
        learners::DiscreteTransition t;
        t.observations = env.observations();
        std::vector<int> actions(4);
        for (auto& a : actions) a = pick(rng);
        const auto outcome = env.step(actions);
        t.actions = Eigen::Map<const Eigen::VectorXi>(actions.data(), 4);
        t.rewards = Eigen::Map<const Eigen::VectorXd>(outcome.rewards.data(), 4);
        t.next_observations = env.observations();
        t.done = outcome.done;
        out.push_back(std::move(t));
    }
    return out;
}

Outcome vdn_equivalence() {
    const auto start = Clock::now();
    std::mt19937_64 rng(202);
    const auto data = random_grid_transitions(20'000, rng);
    std::mt19937_64 init(203);
    const auto config = learners::LearnerConfig::discrete_defaults();
    learners::DiscreteLearner learner(4, 14, 5, config, init);
    check::VdnNets vdn{learner.prediction_nets(), learner.target_nets(), learner.optimizers()};
    const auto identity = relnet::RelationalNetwork::identity(4);
    std::uniform_int_distribution<std::size_t> pick(0, data.size() - 1);
    for (int step = 0; step < 1000; ++step) {
        std::vector<const learners::DiscreteTransition*> batch;
        for (int b = 0; b < config.batch_size; ++b) batch.push_back(&data[pick(rng)]);
        const double got = learners::train_on_batch_discrete(learner, batch, identity, relnet::MixingMode::reward_relational);
        const double want = check::reference_vdn_step(vdn, batch, config.gamma, 5);
        if (std::memcmp(&got, &want, sizeof got) != 0) {
            return {false, "loss differs at batch " + std::to_string(step) + ": " + fmt(got, 17) + " vs " + fmt(want, 17)};
        }
        for (int i = 0; i < 4; ++i) {
            if (!neural::bitwise_equal(learner.prediction_nets()[i], vdn.prediction[i])) {
                return {false, "parameters of agent " + std::to_string(i) + " differ after batch " + std::to_string(step)};
            }
        }
        // Periodic hard sync on both sides so the bootstrap targets move as in training.
        if ((step + 1) % 200 == 0) {
            learner.sync_targets();
            vdn.target = vdn.prediction;
        }
    }
    const double elapsed = seconds_since(start);
    return {elapsed < 60.0, "1000 batches of " + std::to_string(config.batch_size) +
                                ", losses and all parameters bit-identical; " + fmt(elapsed, 3) + " s"};
}

Outcome aggregation_oracle() {
    const auto start = Clock::now();
    std::mt19937_64 rng(303);
    std::uniform_int_distribution<int> size(1, 16);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 10.0);
    double worst = 0.0;
    for (int g = 0; g < 10'000; ++g) {
        const int n = size(rng);
        Eigen::MatrixXd w(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) w(i, j) = unit(rng) < 0.3 ? 0.0 : unit(rng);
        const relnet::RelationalNetwork net("random", w);
        std::vector<double> r(n), q(n);
        for (int i = 0; i < n; ++i) {
            r[i] = normal(rng);
            q[i] = normal(rng);
        }
        worst = std::max(worst, check::relative_error(relnet::aggregate_rewards(net, r), check::brute_force_aggregate(w, r)));
        worst = std::max(worst, check::relative_error(relnet::aggregate_values(net, q), check::brute_force_aggregate(w, q)));
        const Eigen::VectorXd grad = relnet::aggregation_gradient(net);
        for (int j = 0; j < n; ++j) {
            double column = 0.0;
            for (int i = 0; i < n; ++i) column += w(i, j);
            worst = std::max(worst, check::relative_error(grad(j), column));
        }
    }
    return {worst <= 1e-12, "10000 graphs, worst relative error " + fmt(worst, 3) + "; " + fmt(seconds_since(start), 3) + " s"};
}

double grid_optimum(bool green_immobilized) {
    std::vector<bool> immobilized(4, false);
    immobilized[envs::kGreenAgent] = green_immobilized;
    return envs::optimal_grid_return(envs::GridConfig::default_layout(), immobilized).team;
}

ExperimentConfig grid_run_config(LearnerKind kind, const Settings& settings) {
    auto config = ExperimentConfig::grid_protocol(kind);
    config.output_dir = settings.workdir / ("grid_" + to_string(kind));
    return config;
}

Outcome grid_convergence(const Settings& settings) {
    const double optimum = grid_optimum(false);
    std::string detail = "optimum " + fmt(optimum) + "; ";
    bool pass = true;
    for (auto kind : {LearnerKind::vdn, LearnerKind::ca_vdn}) {
        const auto config = grid_run_config(kind, settings);
        const long m = config.malfunction->episode;
        int hits = 0;
        std::string firsts;
        for (const auto& [seed, rows] : train_all(config, settings)) {
            long first = -1;
            for (const auto& p : greedy_points(rows, 0, m)) {
                if (std::abs(p.team_return - optimum) <= 0.05 * std::abs(optimum)) {
                    first = p.episode;
                    break;
                }
            }
            if (first >= 0) ++hits;
            firsts += (firsts.empty() ? "" : ",") + (first >= 0 ? std::to_string(first) : std::string("-"));
        }
        pass = pass && hits >= 8;
        detail += to_string(kind) + " " + std::to_string(hits) + "/10 (first hit " + firsts + "); ";
    }
    return {pass, detail};
}

Outcome grid_recovery(const Settings& settings) {
    const double optimum = grid_optimum(true);
    std::string detail = "immobilized optimum " + fmt(optimum) + "; ";
    std::map<LearnerKind, int> hits;
    for (auto kind : {LearnerKind::ca_vdn, LearnerKind::vdn}) {
        const auto config = grid_run_config(kind, settings);
        const long m = config.malfunction->episode;
        std::string firsts;
        for (const auto& [seed, rows] : train_all(config, settings)) {
            long first = -1;
            for (const auto& p : greedy_points(rows, m, config.total_episodes)) {
                if (p.resources_left == 0.0 && std::abs(p.team_return - optimum) <= 0.10 * std::abs(optimum)) {
                    first = p.episode;
                    break;
                }
            }
            if (first >= 0) ++hits[kind];
            firsts += (firsts.empty() ? "" : ",") + (first >= 0 ? std::to_string(first) : std::string("-"));
        }
        detail += to_string(kind) + " " + std::to_string(hits[kind]) + "/10 (first hit " + firsts + "); ";
    }
    const bool ca_ok = hits[LearnerKind::ca_vdn] >= 8;
    const bool vdn_ok = hits[LearnerKind::vdn] <= 6;
    detail += std::string("need ca_vdn >= 8 [") + (ca_ok ? "met" : "not met") + "], vdn <= 6 [" +
              (vdn_ok ? "met" : "not met") + "]";
    return {ca_ok && vdn_ok, detail};
}

Outcome crawler_reward_identity() {
    using namespace envs;
    const auto start = Clock::now();
    std::vector<std::string> problems;
    const std::vector<Eigen::VectorXd> zeros(4, Eigen::VectorXd::Zero(2));

    // All-zero actions from reset: 0.01 on every one of the 100 steps.
    auto state = crawler_reset(4);
    for (int t = 0; t < crawler::kMaxSteps; ++t) {
        const auto r = crawler_step(state, zeros);
        if (r.team_reward != 0.01) problems.push_back("zero-action reward " + fmt(r.team_reward, 17) + " at step " + std::to_string(t));
        if (r.done != (t + 1 == crawler::kMaxSteps)) problems.push_back("unexpected termination at step " + std::to_string(t));
        state = r.state;
    }

    // Folding every leg down trips the instability rule once the streak reaches 5.
    std::vector<Eigen::VectorXd> fold(4, Eigen::VectorXd::Zero(2));
    for (auto& a : fold) a(1) = -1.0;
    state = crawler_reset(4);
    int steps = 0;
    double last = 0.0;
    bool done = false;
    while (!done) {
        const auto r = crawler_step(state, fold);
        state = r.state;
        last = r.team_reward;
        done = r.done;
        ++steps;
    }
    if (!state.flipped || steps == crawler::kMaxSteps || std::abs(last - (0.01 - 0.2 - 100.0)) > 1e-12) {
        problems.push_back("fold-down rollout ended at step " + std::to_string(steps) + " with reward " + fmt(last, 17));
    }

    // Random rollouts: zero-action steps earn exactly 0.01, and the penalty lands
    // exactly when an independently counted streak of low extension sums hits 5.
    std::mt19937_64 rng(606);
    std::uniform_real_distribution<double> box(-1.0, 1.0);
    std::bernoulli_distribution idle(0.3), fold_bias(0.5);
    int flips = 0, zero_steps = 0;
    for (int episode = 0; episode < 2000 && problems.size() < 5; ++episode) {
        state = crawler_reset(4);
        int streak = 0;
        bool finished = false;
        while (!finished) {
            std::vector<Eigen::VectorXd> actions(4, Eigen::VectorXd::Zero(2));
            const bool zero = idle(rng);
            if (!zero) {
                for (auto& a : actions) {
                    a(0) = box(rng);
                    a(1) = fold_bias(rng) ? -std::abs(box(rng)) : box(rng);
                }
            }
            const auto r = crawler_step(state, actions);
            double control = 0.0;
            for (const auto& a : actions) control += a.squaredNorm();
            double extension = 0.0;
            for (double k : r.state.extensions) extension += k;
            streak = extension < crawler::kFlipThreshold ? streak + 1 : 0;
            const bool flip = streak >= crawler::kFlipSteps;
            const double base = 0.01 + (r.state.body_x - state.body_x) - 0.05 * control;
            const double expected = flip ? base - 100.0 : base;
            if (zero && !flip) {
                ++zero_steps;
                if (r.team_reward != 0.01) problems.push_back("zero-action reward " + fmt(r.team_reward, 17));
            }
            if (std::abs(r.team_reward - expected) > 1e-12) {
                problems.push_back("reward " + fmt(r.team_reward, 17) + " expected " + fmt(expected, 17));
            }
            if (flip != r.state.flipped) problems.push_back("flip flag disagrees with the streak count");
            if (flip) ++flips;
            finished = r.done;
            if (r.done != (flip || r.state.step_count >= crawler::kMaxSteps)) problems.push_back("termination mismatch");
            state = r.state;
        }
    }
    std::string detail = std::to_string(zero_steps) + " zero-action steps, " + std::to_string(flips) +
                         " flips in 2000 random episodes; fold-down flips at step " + std::to_string(steps) + "; " +
                         fmt(seconds_since(start), 3) + " s";
    if (!problems.empty()) detail = problems.front() + "; " + detail;
    return {problems.empty() && flips > 0, detail};
}

// Desk-scale learner for the crawler criterion: the full 3x256 / batch 512
// network does not fit a single core within the runtime target. The epsilon
// horizon keeps the protocol's ratio of one third of the pre-malfunction budget.
ExperimentConfig crawler_desk_config(LearnerKind kind, const fs::path& workdir) {
    auto config = ExperimentConfig::crawler_protocol(kind);
    auto& lc = config.learner_config;
    lc.hidden_layers = {64, 64};
    lc.batch_size = 64;
    lc.sample_count = 64;
    lc.replay_capacity = 100'000;
    lc.epsilon.horizon = 3333;
    config.relational_schedule = {{0, "all_ones"}, {10'000, "drop_0"}};
    config.malfunction->episode = 10'000;
    config.total_episodes = 20'000;
    config.evaluation = {0, 20'000, 10, 100};
    config.output_dir = workdir / ("crawler_" + to_string(kind));
    return config;
}

double mean_train_return(const std::vector<MetricRow>& rows, long from, long to) {
    double sum = 0.0;
    long count = 0;
    for (const auto& r : rows) {
        if (r.phase == "train" && r.agent == "team" && r.metric == "return" && r.episode >= from && r.episode < to) {
            sum += r.value;
            ++count;
        }
    }
    if (count != to - from) throw std::runtime_error("training rows missing in [" + std::to_string(from) + ", " + std::to_string(to) + ")");
    return sum / static_cast<double>(count);
}

Outcome crawler_recovery(const Settings& settings) {
    const auto ca = crawler_desk_config(LearnerKind::ca_mqf, settings.workdir);
    const auto iqf = crawler_desk_config(LearnerKind::iqf, settings.workdir);
    const long m = ca.malfunction->episode, total = ca.total_episodes;
    const auto ca_rows = train_all(ca, settings);
    const auto iqf_rows = train_all(iqf, settings);
    int recovered = 0, ahead = 0;
    std::string detail;
    for (auto seed : ca.seeds) {
        const double pre = mean_train_return(ca_rows.at(seed), m - 1000, m);
        const double post = mean_train_return(ca_rows.at(seed), total - 1000, total);
        const double iqf_post = mean_train_return(iqf_rows.at(seed), total - 1000, total);
        if (post >= 0.7 * pre) ++recovered;
        if (post > iqf_post) ++ahead;
        detail += "seed " + std::to_string(seed) + ": ca_mqf pre " + fmt(pre) + " post " + fmt(post) + ", iqf post " +
                  fmt(iqf_post) + "; ";
    }
    detail += "recovered " + std::to_string(recovered) + "/3, ahead of iqf " + std::to_string(ahead) + "/3";
    return {recovered >= 2 && ahead >= 2, detail};
}

Outcome sampled_argmax() {
    const auto start = Clock::now();
    std::mt19937_64 rng(808);
    auto head = learners::make_functional_head(9, {8}, neural::Activation::tanh, 2, 2, rng);
    // Constant coefficients: Q(s, a) = -(a1^2 + a2^2) for every state.
    head.network.weights.back().setZero();
    head.network.biases.back() << 0, 0, 0, -1, 0, -1;
    const std::vector<learners::FunctionalHead> heads{head};
    std::normal_distribution<double> normal(0.0, 1.0);
    int hits = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        Eigen::MatrixXd obs(9, 1);
        for (int i = 0; i < 9; ++i) obs(i, 0) = normal(rng);
        const Eigen::MatrixXd a = learners::select_actions_continuous(heads, obs, 0.0, 4096, rng);
        const double distance = a.col(0).norm();
        worst = std::max(worst, distance);
        if (distance <= 0.1) ++hits;
    }
    return {hits >= 95, std::to_string(hits) + "/100 within 0.1 of the origin, farthest " + fmt(worst, 3) + "; " +
                            fmt(seconds_since(start), 3) + " s"};
}

Outcome determinism(const Settings& settings) {
    const auto start = Clock::now();
    const auto root = settings.workdir / "determinism";
    fs::remove_all(root);

    auto grid = ExperimentConfig::grid_protocol(LearnerKind::ca_vdn);
    grid.learner_config.epsilon.horizon = 100;
    grid.relational_schedule = {{0, "identity"}, {150, "focus_3"}};
    grid.malfunction->episode = 150;
    grid.total_episodes = 300;
    grid.evaluation = {50, 0, 5, 10};
    grid.seeds = {11};

    auto crawler = ExperimentConfig::crawler_protocol(LearnerKind::ca_mqf);
    crawler.learner_config.hidden_layers = {32, 32};
    crawler.learner_config.batch_size = 32;
    crawler.learner_config.sample_count = 32;
    crawler.learner_config.replay_capacity = 10'000;
    crawler.relational_schedule = {{0, "all_ones"}, {20, "drop_0"}};
    crawler.malfunction->episode = 20;
    crawler.total_episodes = 40;
    crawler.evaluation = {0, 1000, 3, 5};
    crawler.seeds = {12};

    std::vector<std::string> diffs;
    for (auto* config : {&grid, &crawler}) {
        const std::string name = config->environment == EnvironmentKind::gridworld ? "grid" : "crawler";
        for (const char* copy : {"a", "b"}) {
            config->output_dir = root / name / copy;
            run_experiment(*config);
        }
        for (const char* file : {"metrics.csv", "trajectories_eval.csv", "trajectories_final.csv"}) {
            const auto a = slurp(root / name / "a" / ("seed_" + std::to_string(config->seeds[0])) / file);
            const auto b = slurp(root / name / "b" / ("seed_" + std::to_string(config->seeds[0])) / file);
            if (a.empty() || a != b) diffs.push_back(name + "/" + file);
        }
    }
    const double elapsed = seconds_since(start);
    std::string detail = diffs.empty() ? "grid and crawler metrics and trajectories byte-identical" : "differs: ";
    for (const auto& d : diffs) detail += d + " ";
    return {diffs.empty() && elapsed < 120.0, detail + "; " + fmt(elapsed, 3) + " s"};
}

// Hand computation with long double accumulation, two-pass variance.
Interval hand_interval(const std::vector<double>& v) {
    long double sum = 0.0L;
    for (double x : v) sum += x;
    const long double mean = sum / v.size();
    long double ss = 0.0L;
    for (double x : v) ss += (x - mean) * (x - mean);
    Interval out;
    out.mean = static_cast<double>(mean);
    out.runs = static_cast<int>(v.size());
    out.half_width = v.size() < 2 ? 0.0 : static_cast<double>(1.96L * std::sqrt(ss / (v.size() - 1)) / std::sqrt(static_cast<long double>(v.size())));
    return out;
}

Outcome summary_statistics(const Settings& settings) {
    std::mt19937_64 rng(1010);
    std::normal_distribution<double> normal(-40.0, 7.0);
    auto config = ExperimentConfig::grid_protocol(LearnerKind::vdn);
    config.total_episodes = 200;
    config.malfunction->episode = 100;
    config.relational_schedule = {{0, "identity"}};
    double worst = 0.0;
    int compared = 0;
    std::vector<std::string> problems;
    const auto root = settings.workdir / "summary";
    fs::remove_all(root);

    for (int n : {1, 2, 3, 5, 10, 30}) {
        std::vector<RunRecord> runs(n);
        // values[split][metric key] -> one value per run
        std::map<std::string, std::map<std::string, std::vector<double>>> values;
        for (int s = 0; s < n; ++s) {
            config.seeds = {static_cast<std::uint64_t>(s)};
            runs[s].config = to_json(config);
            runs[s].directory = root / ("n" + std::to_string(n)) / ("seed_" + std::to_string(s));
            for (auto [episode, split] : {std::pair<long, std::string>{100, "pre"}, {200, "post"}}) {
                double team = 0.0;
                for (int i = 0; i < 4; ++i) {
                    const double v = normal(rng);
                    team += v;
                    runs[s].metrics.push_back({episode, "final", std::to_string(i), "return", v});
                    values[split][std::to_string(i) + "/return"].push_back(v);
                }
                runs[s].metrics.push_back({episode, "final", "team", "return", team});
                values[split]["team/return"].push_back(team);
                runs[s].metrics.push_back({episode, "final", "team", "episodes", 100});
                runs[s].metrics.push_back({episode - 50, "eval", "team", "return", normal(rng)});
            }
            fs::create_directories(runs[s].directory);
            std::ofstream(runs[s].directory / "config.json") << runs[s].config.dump(2);
            MetricsWriter writer(runs[s].directory / "metrics.csv");
            for (const auto& row : runs[s].metrics) writer.append(row);
        }
        const auto in_memory = summarize(runs);
        const auto from_disk = summarize_runs({root / ("n" + std::to_string(n))});
        if (in_memory.single_run_warning != (n == 1)) problems.push_back("single-run flag wrong for n=" + std::to_string(n));
        for (const auto* table : {&in_memory, &from_disk}) {
            if (table->rows.size() != 10) problems.push_back("expected 10 summary rows, got " + std::to_string(table->rows.size()));
            for (const auto& row : table->rows) {
                const auto& v = values.at(row.split).at(row.agent + "/" + row.metric);
                const auto want = hand_interval(v);
                worst = std::max({worst, check::relative_error(row.stats.mean, want.mean),
                                  check::relative_error(row.stats.half_width, want.half_width)});
                if (row.stats.runs != want.runs) problems.push_back("run count mismatch");
                ++compared;
            }
        }
    }
    std::string detail = std::to_string(compared) + " intervals, worst relative error " + fmt(worst, 3);
    if (!problems.empty()) detail = problems.front() + "; " + detail;
    return {problems.empty() && worst <= 1e-12, detail};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    std::vector<int> only;
    std::vector<int> allow_fail;
    Settings settings;
    settings.workdir = fs::temp_directory_path() / "camarl_acceptance";
    app.add_option("--only", only, "Run only these criteria")->delimiter(',');
    app.add_option("--allow-fail", allow_fail, "Criteria whose FAIL does not change the exit status")->delimiter(',');
    app.add_option("--workdir", settings.workdir, "Where training runs are written");
    app.add_flag("--reuse", settings.reuse, "Read back completed runs with matching configs");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"gradient correctness", gradient_correctness},
        {"VDN equivalence", vdn_equivalence},
        {"aggregation oracle", aggregation_oracle},
        {"grid pre-malfunction convergence", [&] { return grid_convergence(settings); }},
        {"grid recovery differential", [&] { return grid_recovery(settings); }},
        {"crawler reward identity", crawler_reward_identity},
        {"continuous recovery", [&] { return crawler_recovery(settings); }},
        {"sampled-argmax fidelity", sampled_argmax},
        {"determinism", [&] { return determinism(settings); }},
        {"summary statistics", [&] { return summary_statistics(settings); }},
    };

    fs::create_directories(settings.workdir);
    const std::set<int> selected(only.begin(), only.end());
    const std::set<int> tolerated(allow_fail.begin(), allow_fail.end());
    int passed = 0, failed = 0, blocking = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const int id = static_cast<int>(k) + 1;
        if (!selected.empty() && !selected.count(id)) continue;
        Outcome outcome;
        try {
            outcome = criteria[k].second();
        } catch (const std::exception& e) {
            outcome = {false, std::string("error: ") + e.what()};
        }
        std::cout << (outcome.pass ? "PASS" : "FAIL") << "  criterion " << id << " (" << criteria[k].first
                  << "): " << outcome.detail << std::endl;
        if (outcome.pass) {
            ++passed;
        } else {
            ++failed;
            if (!tolerated.count(id)) ++blocking;
        }
    }
    std::cout << passed << " passed, " << failed << " failed";
    if (failed > blocking) std::cout << " (" << failed - blocking << " allowed by --allow-fail)";
    std::cout << std::endl;
    return blocking == 0 ? 0 : 1;
}
