#include "camarl/harness/metrics.hpp"

#include <charconv>
#include <sstream>

#include "camarl/errors.hpp"

namespace camarl::harness {

std::string format_real(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) throw InvalidState("cannot format value");
    return std::string(buf, end);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::string& header) : out_(path, std::ios::trunc) {
    if (!out_) throw InvalidInput("cannot open " + path.string() + " for writing");
    out_ << header << '\n';
}

void CsvWriter::write_line(const std::string& line) {
    out_ << line << '\n';
    if (!out_) throw InvalidState("write failed");
}

void CsvWriter::flush() { out_.flush(); }

void MetricsWriter::append(const MetricRow& row) {
    csv_.write_line(std::to_string(row.episode) + ',' + row.phase + ',' + row.agent + ',' + row.metric + ',' +
                    format_real(row.value));
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

template <typename T>
T parse_number(const std::string& text, const std::string& where) {
    T value{};
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        throw InvalidInput("malformed number '" + text + "' in " + where);
    }
    return value;
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path, const std::string& header,
                                               std::size_t columns) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != header) throw InvalidInput(path.string() + ": unexpected header");
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split_fields(line);
        if (fields.size() != columns) throw InvalidInput(path.string() + ": wrong column count in '" + line + "'");
        rows.push_back(std::move(fields));
    }
    return rows;
}

}  // namespace

std::vector<MetricRow> read_metrics(const std::filesystem::path& path) {
    std::vector<MetricRow> rows;
    const std::string where = path.string();
    for (auto& f : read_csv(path, kMetricsHeader, 5)) {
        rows.push_back({parse_number<long>(f[0], where), f[1], f[2], f[3], parse_number<double>(f[4], where)});
    }
    return rows;
}

std::string to_csv_line(const TrajectoryPoint& p) {
    return std::to_string(p.episode) + ',' + std::to_string(p.step) + ',' + p.entity + ',' + format_real(p.x) + ',' +
           format_real(p.y);
}

std::vector<TrajectoryPoint> read_trajectories(const std::filesystem::path& path) {
    std::vector<TrajectoryPoint> points;
    const std::string where = path.string();
    for (auto& f : read_csv(path, kTrajectoryHeader, 5)) {
        points.push_back({parse_number<long>(f[0], where), parse_number<int>(f[1], where), f[2],
                          parse_number<double>(f[3], where), parse_number<double>(f[4], where)});
    }
    return points;
}

}  // namespace camarl::harness
