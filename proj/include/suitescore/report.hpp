#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "suitescore/clustering.hpp"
#include "suitescore/core_model.hpp"
#include "suitescore/coverage.hpp"
#include "suitescore/ranking.hpp"
#include "suitescore/trend.hpp"

namespace suitescore {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

struct SuiteSection {
    std::string name;
    std::optional<ClusterScoreResult> cluster;
    std::optional<TrendBreakdown> trend;
    std::optional<CoverageResult> coverage;  // bounds taken from this suite alone
    std::optional<CounterId> runtime_column;
    std::optional<RegressionResult> ranking;
};

struct SuiteReport {
    std::string tool_version = kToolVersion;
    RunConfig config;
    std::vector<SuiteSection> suites;
    std::optional<CoverageComparison> comparison;
    /// Wall-clock seconds per phase. Left empty unless timing was requested,
    /// because it differs between otherwise identical runs.
    std::optional<std::vector<std::pair<std::string, double>>> timing;

    std::vector<std::string> suite_names() const;
};

nlohmann::ordered_json report_to_json(const SuiteReport& report);

/// Rebuilds the score-carrying fields of a report from its JSON form.
/// Normalized series and centroids are not part of the document and come back empty.
SuiteReport report_from_json(const nlohmann::json& doc);

std::string render_json(const SuiteReport& report);
std::string render_text(const SuiteReport& report);

/// Line chart of every benchmark's normalized trace for one counter, on the
/// percentile (x) and CDF (y) axes, both 0..100.
std::string render_trend_svg(const TScoreResult& counter, const std::string& title);

/// File-name-safe version of a counter or suite name.
std::string safe_file_name(const std::string& name);

/// Writes report.json, report.txt and charts/<counter>.svg (charts/<suite>/<counter>.svg
/// when the report covers several suites). Returns the files written, in order.
std::vector<std::filesystem::path> emit_report(const SuiteReport& report, const std::filesystem::path& out_dir);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace suitescore
