#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace camarl::harness {

// Phases: "train" (one per training episode), "eval" (one per scheduled
// greedy evaluation) and "final" (the large evaluations taken just before the
// malfunction and after the last episode).
struct MetricRow {
    long episode = 0;
    std::string phase;
    std::string agent;  // agent index, or "team"
    std::string metric;
    double value = 0.0;

    friend bool operator==(const MetricRow&, const MetricRow&) = default;
};

inline constexpr const char* kMetricsHeader = "episode,phase,agent,metric,value";
inline constexpr const char* kTrajectoryHeader = "episode,step,entity,x,y";

// Shortest text that parses back to the same double.
std::string format_real(double value);

// Append-only CSV writer; the header is written when the file is created.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::string& header);
    void write_line(const std::string& line);
    void flush();

private:
    std::ofstream out_;
};

class MetricsWriter {
public:
    explicit MetricsWriter(const std::filesystem::path& path) : csv_(path, kMetricsHeader) {}
    void append(const MetricRow& row);
    void flush() { csv_.flush(); }

private:
    CsvWriter csv_;
};

// Throws InvalidInput on a malformed file.
std::vector<MetricRow> read_metrics(const std::filesystem::path& path);

struct TrajectoryPoint {
    long episode = 0;
    int step = 0;
    std::string entity;  // "agent_<i>" on the grid, "body" on the crawler
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const TrajectoryPoint&, const TrajectoryPoint&) = default;
};

std::string to_csv_line(const TrajectoryPoint& point);
std::vector<TrajectoryPoint> read_trajectories(const std::filesystem::path& path);

}  // namespace camarl::harness
