#include "camarl/harness/summary.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <tuple>

#include "camarl/errors.hpp"

namespace camarl::harness {

namespace fs = std::filesystem;
using nlohmann::json;

Interval confidence_interval(std::span<const double> values) {
    if (values.empty()) throw InvalidInput("confidence interval of an empty sample");
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / n;
    Interval out{mean, 0.0, static_cast<int>(values.size())};
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - mean) * (v - mean);
        out.half_width = 1.96 * std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    }
    return out;
}

RunRecord load_run(const fs::path& seed_dir) {
    RunRecord run;
    run.directory = seed_dir;
    std::ifstream in(seed_dir / "config.json");
    if (!in) throw InvalidInput("no config.json in " + seed_dir.string());
    try {
        in >> run.config;
    } catch (const json::exception& e) {
        throw InvalidInput(seed_dir.string() + "/config.json: " + e.what());
    }
    run.metrics = read_metrics(seed_dir / "metrics.csv");
    return run;
}

std::vector<fs::path> expand_run_dirs(const std::vector<fs::path>& paths) {
    std::vector<fs::path> out;
    for (const auto& p : paths) {
        if (fs::exists(p / "metrics.csv")) {
            out.push_back(p);
            continue;
        }
        if (!fs::is_directory(p)) throw InvalidInput(p.string() + " is not a run directory");
        std::vector<fs::path> children;
        for (const auto& entry : fs::directory_iterator(p)) {
            const auto name = entry.path().filename().string();
            if (entry.is_directory() && name.rfind("seed_", 0) == 0 && fs::exists(entry.path() / "metrics.csv")) {
                children.push_back(entry.path());
            }
        }
        if (children.empty()) throw InvalidInput(p.string() + " contains no completed runs");
        std::sort(children.begin(), children.end());
        out.insert(out.end(), children.begin(), children.end());
    }
    return out;
}

std::vector<std::string> config_differences(const json& a, const json& b) {
    json x = a, y = b;
    for (auto* j : {&x, &y}) {
        j->erase("seeds");
        j->erase("output_dir");
    }
    std::set<std::string> paths;
    for (const auto& op : json::diff(x, y)) paths.insert(op.at("path").get<std::string>());
    return {paths.begin(), paths.end()};
}

namespace {

using Key = std::tuple<std::string, std::string, std::string>;  // split, agent, metric

std::map<Key, double> final_values(const RunRecord& run) {
    const auto& cfg = run.config;
    const long total = cfg.at("total_episodes").get<long>();
    std::optional<long> malfunction;
    if (cfg.contains("malfunction") && !cfg.at("malfunction").is_null()) {
        malfunction = cfg.at("malfunction").at("episode").get<long>();
    }
    std::map<Key, double> values;
    for (const auto& row : run.metrics) {
        if (row.phase != "final" || row.metric == "episodes") continue;
        std::string split;
        if (!malfunction) {
            if (row.episode == total) split = "all";
        } else if (row.episode == *malfunction) {
            split = "pre";
        } else if (row.episode == total) {
            split = "post";
        }
        if (!split.empty()) values[{split, row.agent, row.metric}] = row.value;
    }
    const bool complete = malfunction ? values.count({"pre", "team", "return"}) && values.count({"post", "team", "return"})
                                      : values.count({"all", "team", "return"}) > 0;
    if (!complete) throw InvalidInput(run.directory.string() + " has no final evaluation; the run is incomplete");
    return values;
}

}  // namespace

SummaryTable summarize(const std::vector<RunRecord>& runs) {
    if (runs.empty()) throw InvalidInput("summarize needs at least one run");
    for (std::size_t r = 1; r < runs.size(); ++r) {
        const auto diff = config_differences(runs.front().config, runs[r].config);
        if (!diff.empty()) {
            std::string fields;
            for (const auto& d : diff) fields += (fields.empty() ? "" : ", ") + d;
            throw ConfigError("runs " + runs.front().directory.string() + " and " + runs[r].directory.string() +
                              " have different configs: " + fields);
        }
    }
    std::map<Key, std::vector<double>> samples;
    std::set<Key> first_keys;
    for (std::size_t r = 0; r < runs.size(); ++r) {
        const auto values = final_values(runs[r]);
        std::set<Key> keys;
        for (const auto& [k, v] : values) {
            keys.insert(k);
            samples[k].push_back(v);
        }
        if (r == 0) {
            first_keys = keys;
        } else if (keys != first_keys) {
            throw InvalidInput(runs[r].directory.string() + " records different final metrics than the first run");
        }
    }
    SummaryTable table;
    table.single_run_warning = runs.size() == 1;
    for (const auto& [key, values] : samples) {
        table.rows.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), confidence_interval(values)});
    }
    // pre before post; within a split, agents then team.
    auto split_rank = [](const std::string& s) { return s == "pre" ? 0 : s == "post" ? 1 : 2; };
    std::stable_sort(table.rows.begin(), table.rows.end(), [&](const SummaryRow& a, const SummaryRow& b) {
        return split_rank(a.split) < split_rank(b.split);
    });
    return table;
}

SummaryTable summarize_runs(const std::vector<fs::path>& paths) {
    std::vector<RunRecord> runs;
    for (const auto& dir : expand_run_dirs(paths)) runs.push_back(load_run(dir));
    return summarize(runs);
}

std::string to_csv(const SummaryTable& table) {
    std::string out = "split,agent,metric,mean,half_width,runs\n";
    for (const auto& r : table.rows) {
        out += r.split + ',' + r.agent + ',' + r.metric + ',' + format_real(r.stats.mean) + ',' +
               format_real(r.stats.half_width) + ',' + std::to_string(r.stats.runs) + '\n';
    }
    return out;
}

TrajectoryExport export_trajectories(const fs::path& seed_dir, const std::string& phase,
                                     std::optional<std::pair<long, long>> range) {
    if (phase != "eval" && phase != "final") throw InvalidInput("trajectory phase must be 'eval' or 'final'");
    auto in_range = [&](long e) { return !range || (e >= range->first && e <= range->second); };
    std::set<long> expected;
    for (const auto& row : read_metrics(seed_dir / "metrics.csv")) {
        if (row.phase == phase && in_range(row.episode)) expected.insert(row.episode);
    }
    TrajectoryExport result;
    std::set<long> present;
    for (auto& p : read_trajectories(seed_dir / ("trajectories_" + phase + ".csv"))) {
        if (!in_range(p.episode)) continue;
        present.insert(p.episode);
        result.points.push_back(std::move(p));
    }
    std::set_difference(expected.begin(), expected.end(), present.begin(), present.end(),
                        std::back_inserter(result.missing_episodes));
    return result;
}

std::string to_csv(const std::vector<TrajectoryPoint>& points) {
    std::string out = std::string(kTrajectoryHeader) + '\n';
    for (const auto& p : points) out += to_csv_line(p) + '\n';
    return out;
}

}  // namespace camarl::harness
