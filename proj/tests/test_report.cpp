#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "suitescore/ingest.hpp"
#include "suitescore/report.hpp"
#include "test_helpers.hpp"

using namespace suitescore;
using testing_support::TempDir;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SuiteReport full_report() {
    RunConfig config;
    config.seed = 42;
    const auto ds = load_suite(SuiteLayout::from_root(testing_support::tiny_fixture()));
    SuiteReport r;
    r.config = config;
    SuiteSection s;
    s.name = ds.suite_name;
    s.cluster = cluster_score(ds.stats, config);
    s.trend = trend_score(ds, ds.complete_trend_counters(), config);
    s.coverage = coverage_score(ds.stats, config);
    s.runtime_column = "runtime_s";
    s.ranking = rank_counters(ds.stats, "runtime_s");
    r.suites.push_back(std::move(s));
    return r;
}

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

}  // namespace

TEST(Report, JsonRoundTripIsExact) {
    const auto report = full_report();
    const auto text = render_json(report);
    const auto back = report_from_json(nlohmann::json::parse(text));
    EXPECT_EQ(render_json(back), text);
    EXPECT_EQ(back.suites[0].cluster->score, report.suites[0].cluster->score);
    EXPECT_EQ(back.suites[0].trend->trend_score, report.suites[0].trend->trend_score);
    EXPECT_EQ(back.suites[0].coverage->score, report.suites[0].coverage->score);
    EXPECT_EQ(back.suites[0].ranking->ranking, report.suites[0].ranking->ranking);
}

TEST(Report, AbsentSectionsAreNull) {
    SuiteReport r;
    SuiteSection s;
    s.name = "empty";
    r.suites.push_back(s);
    const auto j = report_to_json(r);
    EXPECT_EQ(j["schema_version"], kSchemaVersion);
    const auto& suite = j["suites"][0];
    for (const char* key : {"cluster", "trend", "coverage", "ranking"}) {
        ASSERT_TRUE(suite.contains(key)) << key;
        EXPECT_TRUE(suite[key].is_null()) << key;
    }
    EXPECT_TRUE(j["comparison"].is_null());
    EXPECT_TRUE(j["timing"].is_null());
}

TEST(Report, TopLevelKeyOrderIsStable) {
    const auto j = report_to_json(full_report());
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"schema_version", "tool_version", "config", "suite_names", "suites",
                                              "comparison", "timing"}));
}

TEST(Report, EmitIsByteIdentical) {
    const auto report = full_report();
    TempDir a("emit_a"), b("emit_b");
    const auto files_a = emit_report(report, a.path());
    const auto files_b = emit_report(report, b.path());
    ASSERT_EQ(files_a.size(), 4u);  // json, txt, two charts
    for (std::size_t i = 0; i < files_a.size(); ++i) {
        EXPECT_EQ(files_a[i].filename(), files_b[i].filename());
        EXPECT_EQ(slurp(files_a[i]), slurp(files_b[i]));
    }
    EXPECT_TRUE(std::filesystem::exists(a.path() / "charts" / "llc_misses.svg"));
}

TEST(Report, TextMarksTopRankedCounter) {
    const auto text = render_text(full_report());
    EXPECT_NE(text.find("ClusterScore"), std::string::npos);
    EXPECT_NE(text.find("TrendScore"), std::string::npos);
    EXPECT_NE(text.find("CoverageScore"), std::string::npos);
    EXPECT_EQ(count(text, "1*"), 1u);
}

TEST(Svg, OnePolylinePerBenchmark) {
    const auto report = full_report();
    const auto& ts = report.suites[0].trend->counters[0];
    const auto svg = render_trend_svg(ts, "a<b & c");
    EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
    EXPECT_NE(svg.find("viewBox=\"0 0 640"), std::string::npos);
    EXPECT_EQ(count(svg, "<polyline"), ts.benchmarks.size());
    EXPECT_NE(svg.find("a&lt;b &amp; c"), std::string::npos);
    EXPECT_EQ(count(svg, "<svg"), count(svg, "</svg>"));
    EXPECT_EQ(count(svg, "<g"), count(svg, "</g>"));
    for (const auto& b : ts.benchmarks) EXPECT_NE(svg.find(">" + b + "<"), std::string::npos) << b;
}

TEST(Svg, SafeFileName) {
    EXPECT_EQ(safe_file_name("llc_misses"), "llc_misses");
    EXPECT_EQ(safe_file_name("a/b c"), "a_b_c");
    EXPECT_EQ(safe_file_name(".."), "_..");
    EXPECT_EQ(safe_file_name(""), "_");
}
