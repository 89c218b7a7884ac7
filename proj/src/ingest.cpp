#include "suitescore/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace suitescore {

namespace {

struct Line {
    std::size_t number;  // 1-based
    std::string_view text;
};

/// Splits on LF, strips a trailing CR, drops blank lines.
std::vector<Line> split_lines(std::string_view content) {
    std::vector<Line> lines;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= content.size()) {
        auto end = content.find('\n', pos);
        if (end == std::string_view::npos) end = content.size();
        auto text = content.substr(pos, end - pos);
        ++number;
        if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
        if (text.find_first_not_of(" \t") != std::string_view::npos) lines.push_back({number, text});
        pos = end + 1;
    }
    return lines;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_cells(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t pos = 0;
    while (true) {
        const auto comma = line.find(',', pos);
        if (comma == std::string_view::npos) {
            cells.push_back(trim(line.substr(pos)));
            break;
        }
        cells.push_back(trim(line.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return cells;
}

std::optional<double> parse_number(std::string_view cell) {
    if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
    if (cell.empty()) return std::nullopt;
    double value = 0.0;
    const auto* first = cell.data();
    const auto* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) return std::nullopt;
    return value;
}

std::string quoted(std::string_view s) { return "'" + std::string(s) + "'"; }

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

Error with_path(const Error& e, const std::filesystem::path& path) {
    return Error(e.kind(), path.string() + ": " + e.what(), e.line(), e.column());
}

}  // namespace

SuiteLayout SuiteLayout::from_root(const std::filesystem::path& root) {
    return {root, root / "stats.csv", root / "series"};
}

StatsMatrix parse_stats_csv(std::string_view content) {
    const auto lines = split_lines(content);
    if (lines.empty()) throw Error(ErrorKind::Format, "missing header line", 1, 0);
    const auto header = split_cells(lines.front().text);
    const auto header_line = lines.front().number;
    if (header.front() != "benchmark")
        throw Error(ErrorKind::Format,
                    "missing header: first line must start with 'benchmark', found " +
                        quoted(header.front()),
                    header_line, 1);
    if (header.size() < 2) throw Error(ErrorKind::Format, "header lists no counters", header_line, 0);

    std::vector<CounterId> counters;
    std::set<std::string_view> seen_counters;
    for (std::size_t c = 1; c < header.size(); ++c) {
        if (header[c].empty())
            throw Error(ErrorKind::Format, "empty counter name in header", header_line, c + 1);
        if (!seen_counters.insert(header[c]).second)
            throw Error(ErrorKind::Duplicate, "duplicate counter " + quoted(header[c]), header_line,
                        c + 1);
        counters.emplace_back(header[c]);
    }

    std::vector<BenchmarkId> benchmarks;
    std::vector<double> values;
    std::set<std::string> seen_benchmarks;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& line = lines[i];
        const auto cells = split_cells(line.text);
        if (cells.size() != header.size())
            throw Error(ErrorKind::Format,
                        "row has " + std::to_string(cells.size()) + " cells, header has " +
                            std::to_string(header.size()),
                        line.number, 0);
        if (cells.front().empty())
            throw Error(ErrorKind::Format, "empty benchmark name", line.number, 1);
        if (!seen_benchmarks.emplace(cells.front()).second)
            throw Error(ErrorKind::Duplicate, "duplicate benchmark " + quoted(cells.front()),
                        line.number, 1);
        benchmarks.emplace_back(cells.front());
        for (std::size_t c = 1; c < cells.size(); ++c) {
            const auto v = parse_number(cells[c]);
            if (!v)
                throw Error(ErrorKind::Parse, "not a finite number: " + quoted(cells[c]), line.number,
                            c + 1);
            if (*v < 0.0)
                throw Error(ErrorKind::Validation, "negative counter value " + quoted(cells[c]),
                            line.number, c + 1);
            values.push_back(*v);
        }
    }
    if (benchmarks.empty()) throw Error(ErrorKind::Format, "no benchmark rows", header_line, 0);
    return StatsMatrix(std::move(benchmarks), std::move(counters), std::move(values));
}

std::string serialize_stats_csv(const StatsMatrix& stats) {
    std::string out = "benchmark";
    for (const auto& c : stats.counters()) out += "," + c;
    out += "\n";
    for (std::size_t r = 0; r < stats.rows(); ++r) {
        out += stats.benchmarks()[r];
        for (std::size_t c = 0; c < stats.cols(); ++c) out += "," + format_double(stats.at(r, c));
        out += "\n";
    }
    return out;
}

CounterSeries parse_series_csv(std::string_view content, const BenchmarkId& benchmark,
                               const CounterId& counter) {
    const auto lines = split_lines(content);
    if (lines.empty()) throw Error(ErrorKind::Format, "missing header line 'time,value'", 1, 0);
    const auto header = split_cells(lines.front().text);
    if (header.size() != 2 || header[0] != "time" || header[1] != "value")
        throw Error(ErrorKind::Format, "header must be 'time,value'", lines.front().number, 0);

    CounterSeries series{benchmark, counter, {}};
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& line = lines[i];
        const auto cells = split_cells(line.text);
        if (cells.size() != 2)
            throw Error(ErrorKind::Format, "row must have 2 cells, found " + std::to_string(cells.size()),
                        line.number, 0);
        const auto t = parse_number(cells[0]);
        if (!t) throw Error(ErrorKind::Parse, "not a finite number: " + quoted(cells[0]), line.number, 1);
        const auto v = parse_number(cells[1]);
        if (!v) throw Error(ErrorKind::Parse, "not a finite number: " + quoted(cells[1]), line.number, 2);
        if (*v < 0.0)
            throw Error(ErrorKind::Validation, "negative counter value " + quoted(cells[1]), line.number, 2);
        if (!series.samples.empty() && !(*t > series.samples.back().time))
            throw Error(ErrorKind::Order,
                        "timestamp " + quoted(cells[0]) + " at row " + std::to_string(line.number) +
                            " does not increase",
                        line.number, 1);
        series.samples.push_back({*t, *v});
    }
    if (series.samples.size() < 2)
        throw Error(ErrorKind::Size,
                    "series needs at least 2 samples, found " + std::to_string(series.samples.size()));
    return series;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw Error(ErrorKind::Io, "failed reading " + path.string());
    return buf.str();
}

SuiteDataset load_suite(const SuiteLayout& layout) {
    namespace fs = std::filesystem;
    SuiteDataset dataset;
    dataset.suite_name = layout.root.filename().string();
    if (dataset.suite_name.empty()) dataset.suite_name = layout.root.parent_path().filename().string();

    if (!fs::is_regular_file(layout.stats_file))
        throw Error(ErrorKind::Io, "stats file not found: " + layout.stats_file.string());
    try {
        dataset.stats = parse_stats_csv(read_text_file(layout.stats_file));
    } catch (const Error& e) {
        throw with_path(e, layout.stats_file);
    }

    if (fs::is_directory(layout.series_dir)) {
        std::vector<fs::path> counter_dirs;
        for (const auto& entry : fs::directory_iterator(layout.series_dir))
            if (entry.is_directory()) counter_dirs.push_back(entry.path());
        std::sort(counter_dirs.begin(), counter_dirs.end());

        for (const auto& dir : counter_dirs) {
            const CounterId counter = dir.filename().string();
            std::vector<fs::path> files;
            for (const auto& entry : fs::directory_iterator(dir))
                if (entry.is_regular_file() && entry.path().extension() == ".csv")
                    files.push_back(entry.path());
            std::sort(files.begin(), files.end());

            for (const auto& file : files) {
                const BenchmarkId bench = file.stem().string();
                if (!dataset.stats.counter_index(counter))
                    throw Error(ErrorKind::Validation,
                                file.string() + ": series for unknown counter '" + counter + "'");
                if (!dataset.stats.benchmark_index(bench))
                    throw Error(ErrorKind::Validation,
                                file.string() + ": series for unknown benchmark '" + bench + "'");
                try {
                    dataset.series.emplace(SeriesKey{counter, bench},
                                           parse_series_csv(read_text_file(file), bench, counter));
                } catch (const Error& e) {
                    throw with_path(e, file);
                }
            }
        }
    }

    const auto check = validate_dataset(dataset);
    if (!check.ok()) {
        std::string msg = layout.root.string() + ": dataset invalid";
        for (const auto& v : check.violations) msg += "; " + v.describe();
        throw Error(ErrorKind::Validation, msg);
    }
    return dataset;
}

RunConfig parse_config(std::string_view json_text, RunConfig base) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::Format, std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw Error(ErrorKind::Format, "config must be a JSON object");

    auto integer = [](const nlohmann::json& v, const std::string& key) -> long long {
        if (!v.is_number_integer()) throw Error(ErrorKind::Format, "config key '" + key + "' must be an integer");
        return v.get<long long>();
    };
    auto real = [](const nlohmann::json& v, const std::string& key) -> double {
        if (!v.is_number()) throw Error(ErrorKind::Format, "config key '" + key + "' must be a number");
        return v.get<double>();
    };

    for (const auto& [key, value] : doc.items()) {
        if (key == "seed") {
            if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<long long>() >= 0))
                throw Error(ErrorKind::Format, "config key 'seed' must be a non-negative integer");
            base.seed = value.get<std::uint64_t>();
        } else if (key == "kmeans_restarts") {
            base.kmeans_restarts = static_cast<int>(integer(value, key));
        } else if (key == "kmeans_max_iters") {
            base.kmeans_max_iters = static_cast<int>(integer(value, key));
        } else if (key == "kmeans_tolerance") {
            base.kmeans_tolerance = real(value, key);
        } else if (key == "variance_threshold") {
            base.variance_threshold = real(value, key);
        } else if (key == "resample_points") {
            base.resample_points = static_cast<int>(integer(value, key));
        } else if (key == "standardize_for_clustering") {
            if (!value.is_boolean())
                throw Error(ErrorKind::Format, "config key 'standardize_for_clustering' must be a boolean");
            base.standardize_for_clustering = value.get<bool>();
        } else {
            throw Error(ErrorKind::Format, "unknown config key '" + key + "'");
        }
    }
    validate_config(base);
    return base;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
    try {
        return parse_config(read_text_file(path), base);
    } catch (const Error& e) {
        throw with_path(e, path);
    }
}

}  // namespace suitescore
