#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "suitescore/core_model.hpp"

namespace suitescore {

/// On-disk layout of one suite:
///   <root>/stats.csv
///   <root>/series/<counter>/<benchmark>.csv   (optional)
struct SuiteLayout {
    std::filesystem::path root;
    std::filesystem::path stats_file;
    std::filesystem::path series_dir;

    static SuiteLayout from_root(const std::filesystem::path& root);
};

/// Parses `benchmark,<counter1>,...` followed by one row per benchmark.
/// Throws Error with 1-based line/column on malformed input, and
/// Error(Validation) if the parsed matrix violates a StatsMatrix invariant.
StatsMatrix parse_stats_csv(std::string_view content);

/// Inverse of parse_stats_csv; numbers are written in shortest round-trip form.
std::string serialize_stats_csv(const StatsMatrix& stats);

/// Parses a `time,value` file.
CounterSeries parse_series_csv(std::string_view content, const BenchmarkId& benchmark,
                               const CounterId& counter);

SuiteDataset load_suite(const SuiteLayout& layout);

/// Reads a JSON object whose keys mirror RunConfig. Unknown keys are rejected.
RunConfig parse_config(std::string_view json_text, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

std::string read_text_file(const std::filesystem::path& path);

}  // namespace suitescore
