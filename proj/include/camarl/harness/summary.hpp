#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "camarl/harness/metrics.hpp"

namespace camarl::harness {

struct Interval {
    double mean = 0.0;
    double half_width = 0.0;  // 1.96 * sample sd / sqrt(n); 0 for a single value
    int runs = 0;
};

Interval confidence_interval(std::span<const double> values);

struct SummaryRow {
    std::string split;  // "pre" / "post" around the malfunction, "all" without one
    std::string agent;
    std::string metric;
    Interval stats;
};

struct SummaryTable {
    std::vector<SummaryRow> rows;
    bool single_run_warning = false;
};

struct RunRecord {
    std::filesystem::path directory;
    nlohmann::json config;
    std::vector<MetricRow> metrics;
};

RunRecord load_run(const std::filesystem::path& seed_dir);

// Accepts seed directories or experiment directories holding seed_* children.
std::vector<std::filesystem::path> expand_run_dirs(const std::vector<std::filesystem::path>& paths);

// JSON-pointer paths where two run configs differ, ignoring seeds and output_dir.
std::vector<std::string> config_differences(const nlohmann::json& a, const nlohmann::json& b);

// Aggregates each run's "final" evaluation records. Throws ConfigError on
// heterogeneous configs and InvalidInput on incomplete runs.
SummaryTable summarize(const std::vector<RunRecord>& runs);
SummaryTable summarize_runs(const std::vector<std::filesystem::path>& paths);

// Header: split,agent,metric,mean,half_width,runs
std::string to_csv(const SummaryTable& table);

struct TrajectoryExport {
    std::vector<TrajectoryPoint> points;
    std::vector<long> missing_episodes;  // evaluated per metrics.csv but absent from the trajectory file
};

// phase is "eval" or "final"; `range` is inclusive, and an empty range yields no points.
TrajectoryExport export_trajectories(const std::filesystem::path& seed_dir, const std::string& phase,
                                     std::optional<std::pair<long, long>> range = std::nullopt);

std::string to_csv(const std::vector<TrajectoryPoint>& points);

}  // namespace camarl::harness
