#include "suitescore/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

namespace suitescore {

using ojson = nlohmann::ordered_json;
using nlohmann::json;

std::vector<std::string> SuiteReport::suite_names() const {
    std::vector<std::string> out;
    for (const auto& s : suites) out.push_back(s.name);
    return out;
}

namespace {

ojson config_to_json(const RunConfig& c) {
    ojson j;
    j["seed"] = c.seed;
    j["kmeans_restarts"] = c.kmeans_restarts;
    j["kmeans_max_iters"] = c.kmeans_max_iters;
    j["kmeans_tolerance"] = c.kmeans_tolerance;
    j["variance_threshold"] = c.variance_threshold;
    j["resample_points"] = c.resample_points;
    j["standardize_for_clustering"] = c.standardize_for_clustering;
    return j;
}

RunConfig config_from_json(const json& j) {
    RunConfig c;
    c.seed = j.at("seed").get<std::uint64_t>();
    c.kmeans_restarts = j.at("kmeans_restarts").get<int>();
    c.kmeans_max_iters = j.at("kmeans_max_iters").get<int>();
    c.kmeans_tolerance = j.at("kmeans_tolerance").get<double>();
    c.variance_threshold = j.at("variance_threshold").get<double>();
    c.resample_points = j.at("resample_points").get<int>();
    c.standardize_for_clustering = j.at("standardize_for_clustering").get<bool>();
    return c;
}

ojson cluster_to_json(const ClusterScoreResult& r) {
    ojson j;
    j["cluster_score"] = r.score;
    j["benchmarks"] = r.benchmarks;
    ojson per_k = ojson::array();
    for (std::size_t i = 0; i < r.ks.size(); ++i) {
        const auto& c = r.clusterings[i];
        const auto& b = r.breakdowns[i];
        ojson entry;
        entry["k"] = r.ks[i];
        entry["suite_silhouette"] = b.suite_at_k;
        entry["inertia"] = c.inertia;
        entry["iterations"] = c.iterations;
        entry["restart"] = c.restart;
        entry["per_cluster"] = b.per_cluster;
        ojson points = ojson::array();
        for (std::size_t p = 0; p < r.benchmarks.size(); ++p) {
            ojson pt;
            pt["benchmark"] = r.benchmarks[p];
            pt["cluster"] = c.assignment[p];
            pt["silhouette"] = b.per_point[p];
            pt["intra"] = b.intra[p];
            pt["inter"] = b.inter[p];
            points.push_back(std::move(pt));
        }
        entry["points"] = std::move(points);
        per_k.push_back(std::move(entry));
    }
    j["per_k"] = std::move(per_k);
    return j;
}

ClusterScoreResult cluster_from_json(const json& j) {
    ClusterScoreResult r;
    r.score = j.at("cluster_score").get<double>();
    r.benchmarks = j.at("benchmarks").get<std::vector<BenchmarkId>>();
    for (const auto& entry : j.at("per_k")) {
        Clustering c;
        SilhouetteBreakdown b;
        c.k = entry.at("k").get<int>();
        c.inertia = entry.at("inertia").get<double>();
        c.iterations = entry.at("iterations").get<int>();
        c.restart = entry.at("restart").get<int>();
        b.suite_at_k = entry.at("suite_silhouette").get<double>();
        b.per_cluster = entry.at("per_cluster").get<std::vector<double>>();
        for (const auto& pt : entry.at("points")) {
            c.assignment.push_back(pt.at("cluster").get<int>());
            b.per_point.push_back(pt.at("silhouette").get<double>());
            b.intra.push_back(pt.at("intra").get<double>());
            b.inter.push_back(pt.at("inter").get<double>());
        }
        r.ks.push_back(c.k);
        r.clusterings.push_back(std::move(c));
        r.breakdowns.push_back(std::move(b));
    }
    return r;
}

ojson trend_to_json(const TrendBreakdown& t) {
    ojson j;
    j["trend_score"] = t.trend_score;
    ojson counters = ojson::array();
    for (const auto& ts : t.counters) {
        ojson entry;
        entry["counter"] = ts.counter;
        entry["tscore"] = ts.score;
        entry["benchmarks"] = ts.benchmarks;
        ojson pairs = ojson::array();
        const auto n = ts.benchmarks.size();
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                if (a == b) continue;
                ojson pair;
                pair["a"] = ts.benchmarks[a];
                pair["b"] = ts.benchmarks[b];
                pair["distance"] = ts.distances[a * n + b];
                pair["raw_cost"] = ts.raw_costs[a * n + b];
                pairs.push_back(std::move(pair));
            }
        entry["pairs"] = std::move(pairs);
        counters.push_back(std::move(entry));
    }
    j["counters"] = std::move(counters);
    return j;
}

TrendBreakdown trend_from_json(const json& j) {
    TrendBreakdown t;
    t.trend_score = j.at("trend_score").get<double>();
    for (const auto& entry : j.at("counters")) {
        TScoreResult ts;
        ts.counter = entry.at("counter").get<CounterId>();
        ts.score = entry.at("tscore").get<double>();
        ts.benchmarks = entry.at("benchmarks").get<std::vector<BenchmarkId>>();
        const auto n = ts.benchmarks.size();
        ts.distances.assign(n * n, 0.0);
        ts.raw_costs.assign(n * n, 0.0);
        auto index_of = [&](const std::string& name) {
            for (std::size_t i = 0; i < n; ++i)
                if (ts.benchmarks[i] == name) return i;
            throw Error(ErrorKind::Format, "pair references unknown benchmark '" + name + "'");
        };
        for (const auto& pair : entry.at("pairs")) {
            const auto a = pair.at("a").get<std::string>();
            const auto b = pair.at("b").get<std::string>();
            const double d = pair.at("distance").get<double>();
            ts.distances[index_of(a) * n + index_of(b)] = d;
            ts.raw_costs[index_of(a) * n + index_of(b)] = pair.at("raw_cost").get<double>();
            t.per_pair[{ts.counter, a, b}] = d;
        }
        t.per_counter[ts.counter] = ts.score;
        t.counters.push_back(std::move(ts));
    }
    return t;
}

ojson coverage_to_json(const CoverageResult& c) {
    ojson j;
    j["coverage_score"] = c.score;
    j["bounds"] = c.shared_bounds ? "shared" : "per_suite";
    j["d"] = c.model.d;
    j["eigenvalues"] = c.model.eigenvalues;
    j["spectrum"] = c.model.spectrum;
    j["total_variance"] = c.model.total_variance;
    j["explained_ratio"] = c.model.explained_ratio();
    return j;
}

CoverageResult coverage_from_json(const json& j) {
    CoverageResult c;
    c.score = j.at("coverage_score").get<double>();
    c.shared_bounds = j.at("bounds").get<std::string>() == "shared";
    c.model.d = j.at("d").get<std::size_t>();
    c.model.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
    c.model.spectrum = j.at("spectrum").get<std::vector<double>>();
    c.model.total_variance = j.at("total_variance").get<double>();
    return c;
}

ojson ranking_to_json(const CounterId& runtime, const RegressionResult& r) {
    ojson j;
    j["runtime_column"] = runtime;
    j["r_squared"] = r.r_squared;
    j["intercept"] = r.intercept;
    j["ridge_used"] = r.ridge_used;
    j["ridge_lambda"] = r.ridge_lambda;
    ojson coefs = ojson::array();
    for (std::size_t i = 0; i < r.features.size(); ++i) {
        ojson c;
        c["counter"] = r.features[i];
        c["coefficient"] = r.coefficients[i];
        coefs.push_back(std::move(c));
    }
    j["coefficients"] = std::move(coefs);
    j["ranking"] = r.ranking;
    return j;
}

RegressionResult ranking_from_json(const json& j) {
    RegressionResult r;
    r.r_squared = j.at("r_squared").get<double>();
    r.intercept = j.at("intercept").get<double>();
    r.ridge_used = j.at("ridge_used").get<bool>();
    r.ridge_lambda = j.at("ridge_lambda").get<double>();
    for (const auto& c : j.at("coefficients")) {
        r.features.push_back(c.at("counter").get<CounterId>());
        r.coefficients.push_back(c.at("coefficient").get<double>());
    }
    r.ranking = j.at("ranking").get<std::vector<CounterId>>();
    return r;
}

template <class T, class Fn>
ojson optional_json(const std::optional<T>& value, Fn&& fn) {
    return value ? fn(*value) : ojson(nullptr);
}

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

std::string lpad(std::string s, std::size_t width) {
    if (s.size() < width) s.insert(0, width - s.size(), ' ');
    return s;
}

}  // namespace

nlohmann::ordered_json report_to_json(const SuiteReport& report) {
    ojson doc;
    doc["schema_version"] = kSchemaVersion;
    doc["tool_version"] = report.tool_version;
    doc["config"] = config_to_json(report.config);
    doc["suite_names"] = report.suite_names();
    ojson suites = ojson::array();
    for (const auto& s : report.suites) {
        ojson entry;
        entry["name"] = s.name;
        entry["cluster"] = optional_json(s.cluster, cluster_to_json);
        entry["trend"] = optional_json(s.trend, trend_to_json);
        entry["coverage"] = optional_json(s.coverage, coverage_to_json);
        entry["ranking"] = s.ranking ? ranking_to_json(s.runtime_column.value_or(""), *s.ranking) : ojson(nullptr);
        suites.push_back(std::move(entry));
    }
    doc["suites"] = std::move(suites);
    doc["comparison"] = optional_json(report.comparison, [](const CoverageComparison& c) {
        ojson j;
        j["suite_names"] = c.suite_names;
        ojson bounds = ojson::array();
        for (const auto& [counter, range] : c.bounds) {
            ojson b;
            b["counter"] = counter;
            b["min"] = range.first;
            b["max"] = range.second;
            bounds.push_back(std::move(b));
        }
        j["bounds"] = std::move(bounds);
        ojson shared = ojson::array();
        for (const auto& r : c.shared) shared.push_back(coverage_to_json(r));
        ojson own = ojson::array();
        for (const auto& r : c.per_suite) own.push_back(coverage_to_json(r));
        j["shared"] = std::move(shared);
        j["per_suite"] = std::move(own);
        return j;
    });
    doc["timing"] = optional_json(report.timing, [](const auto& phases) {
        ojson arr = ojson::array();
        for (const auto& [phase, seconds] : phases) {
            ojson p;
            p["phase"] = phase;
            p["seconds"] = seconds;
            arr.push_back(std::move(p));
        }
        return arr;
    });
    return doc;
}

SuiteReport report_from_json(const nlohmann::json& doc) {
    try {
        if (doc.at("schema_version").get<int>() != kSchemaVersion)
            throw Error(ErrorKind::Format, "unsupported report schema version");
        SuiteReport report;
        report.tool_version = doc.at("tool_version").get<std::string>();
        report.config = config_from_json(doc.at("config"));
        for (const auto& entry : doc.at("suites")) {
            SuiteSection s;
            s.name = entry.at("name").get<std::string>();
            if (!entry.at("cluster").is_null()) s.cluster = cluster_from_json(entry.at("cluster"));
            if (!entry.at("trend").is_null()) s.trend = trend_from_json(entry.at("trend"));
            if (!entry.at("coverage").is_null()) s.coverage = coverage_from_json(entry.at("coverage"));
            if (!entry.at("ranking").is_null()) {
                s.runtime_column = entry.at("ranking").at("runtime_column").get<std::string>();
                s.ranking = ranking_from_json(entry.at("ranking"));
            }
            report.suites.push_back(std::move(s));
        }
        if (const auto& c = doc.at("comparison"); !c.is_null()) {
            CoverageComparison cmp;
            cmp.suite_names = c.at("suite_names").get<std::vector<std::string>>();
            for (const auto& b : c.at("bounds"))
                cmp.bounds[b.at("counter").get<std::string>()] = {b.at("min").get<double>(),
                                                                   b.at("max").get<double>()};
            for (const auto& r : c.at("shared")) cmp.shared.push_back(coverage_from_json(r));
            for (const auto& r : c.at("per_suite")) cmp.per_suite.push_back(coverage_from_json(r));
            report.comparison = std::move(cmp);
        }
        if (const auto& t = doc.at("timing"); !t.is_null()) {
            report.timing.emplace();
            for (const auto& p : t)
                report.timing->emplace_back(p.at("phase").get<std::string>(), p.at("seconds").get<double>());
        }
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Format, std::string("malformed report document: ") + e.what());
    }
}

std::string render_json(const SuiteReport& report) { return report_to_json(report).dump(2) + "\n"; }

std::string render_text(const SuiteReport& report) {
    std::string out;
    const auto& c = report.config;
    out += "suitescore " + report.tool_version + "\n";
    out += "seed=" + std::to_string(c.seed) + " restarts=" + std::to_string(c.kmeans_restarts) +
           " standardize=" + (c.standardize_for_clustering ? "yes" : "no") +
           " resample_points=" + std::to_string(c.resample_points) +
           " variance_threshold=" + fmt("%g", c.variance_threshold) + "\n";

    for (const auto& s : report.suites) {
        out += "\n== Suite: " + s.name + " ==\n";
        if (s.cluster) {
            out += "ClusterScore   " + fmt("%.12f", s.cluster->score) + "   (lower = more diverse)\n";
            out += "  " + lpad("k", 4) + "  " + lpad("S(W)_k", 16) + "  " + lpad("inertia", 16) + "\n";
            for (std::size_t i = 0; i < s.cluster->ks.size(); ++i)
                out += "  " + lpad(std::to_string(s.cluster->ks[i]), 4) + "  " +
                       lpad(fmt("%.10f", s.cluster->breakdowns[i].suite_at_k), 16) + "  " +
                       lpad(fmt("%.6g", s.cluster->clusterings[i].inertia), 16) + "\n";
        }
        if (s.trend) {
            out += "TrendScore     " + fmt("%.12f", s.trend->trend_score) +
                   "   (higher = more diverse phase behavior)\n";
            std::size_t width = 8;
            for (const auto& ts : s.trend->counters) width = std::max(width, ts.counter.size());
            out += "  " + pad("counter", width) + "  " + lpad("TScore", 16) + "\n";
            for (const auto& ts : s.trend->counters)
                out += "  " + pad(ts.counter, width) + "  " + lpad(fmt("%.10f", ts.score), 16) + "\n";
        }
        if (s.coverage) {
            out += "CoverageScore  " + fmt("%.12f", s.coverage->score) + "   (d=" +
                   std::to_string(s.coverage->model.d) +
                   ", explained=" + fmt("%.6f", s.coverage->model.explained_ratio()) + ")\n";
            out += "  eigenvalues:";
            for (double e : s.coverage->model.spectrum) out += " " + fmt("%.6g", e);
            out += "\n";
        }
        if (s.ranking) {
            const auto& r = *s.ranking;
            out += "Counter ranking (target: " + s.runtime_column.value_or("?") +
                   ", R^2=" + fmt("%.6f", r.r_squared) + (r.ridge_used ? ", ridge" : "") + ")\n";
            std::size_t width = 8;
            for (const auto& name : r.features) width = std::max(width, name.size());
            out += "  " + lpad("rank", 4) + "  " + pad("counter", width) + "  " + lpad("coefficient", 12) + "\n";
            const auto coefs = r.coefficient_map();
            const double top = r.ranking.empty() ? 0.0 : std::abs(coefs.at(r.ranking.front()));
            for (std::size_t i = 0; i < r.ranking.size(); ++i) {
                const double v = coefs.at(r.ranking[i]);
                const bool best = std::abs(v) == top;
                out += "  " + lpad(std::to_string(i + 1) + (best ? "*" : " "), 4) + "  " +
                       pad(r.ranking[i], width) + "  " + lpad(fmt("%.4f", v), 12) + "\n";
            }
        }
    }

    if (report.comparison) {
        const auto& cmp = *report.comparison;
        out += "\n== Coverage comparison ==\n";
        std::size_t width = 8;
        for (const auto& n : cmp.suite_names) width = std::max(width, n.size());
        out += "  " + pad("suite", width) + "  " + lpad("shared bounds", 16) + "  " + lpad("own bounds", 16) +
               "  " + lpad("d", 3) + "\n";
        for (std::size_t i = 0; i < cmp.suite_names.size(); ++i)
            out += "  " + pad(cmp.suite_names[i], width) + "  " + lpad(fmt("%.10f", cmp.shared[i].score), 16) +
                   "  " + lpad(fmt("%.10f", cmp.per_suite[i].score), 16) + "  " +
                   lpad(std::to_string(cmp.shared[i].model.d), 3) + "\n";
    }

    if (report.timing) {
        out += "\nTiming (s):";
        for (const auto& [phase, seconds] : *report.timing) out += " " + phase + "=" + fmt("%.3f", seconds);
        out += "\n";
    }
    return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorKind::Io, "failed writing " + path.string());
}

std::vector<std::filesystem::path> emit_report(const SuiteReport& report, const std::filesystem::path& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create " + out_dir.string() + ": " + ec.message());

    std::vector<fs::path> written;
    write_text_file(out_dir / "report.json", render_json(report));
    written.push_back(out_dir / "report.json");
    write_text_file(out_dir / "report.txt", render_text(report));
    written.push_back(out_dir / "report.txt");

    const bool nested = report.suites.size() > 1;
    for (const auto& s : report.suites) {
        if (!s.trend) continue;
        const auto dir = nested ? out_dir / "charts" / safe_file_name(s.name) : out_dir / "charts";
        fs::create_directories(dir, ec);
        if (ec) throw Error(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());
        for (const auto& ts : s.trend->counters) {
            const auto path = dir / (safe_file_name(ts.counter) + ".svg");
            write_text_file(path, render_trend_svg(ts, s.name + ": " + ts.counter));
            written.push_back(path);
        }
    }
    return written;
}

}  // namespace suitescore
