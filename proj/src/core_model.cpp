#include "suitescore/core_model.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace suitescore {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Format: return "format error";
        case ErrorKind::Parse: return "parse error";
        case ErrorKind::Duplicate: return "duplicate error";
        case ErrorKind::Order: return "order error";
        case ErrorKind::Size: return "size error";
        case ErrorKind::Argument: return "argument error";
        case ErrorKind::Dimension: return "dimension error";
        case ErrorKind::Completeness: return "completeness error";
        case ErrorKind::Comparability: return "comparability error";
        case ErrorKind::Validation: return "validation error";
        case ErrorKind::DegenerateTarget: return "degenerate target error";
        case ErrorKind::Io: return "I/O error";
    }
    return "error";
}

StatsMatrix::StatsMatrix(std::vector<BenchmarkId> benchmarks, std::vector<CounterId> counters,
                         std::vector<double> values)
    : benchmarks_(std::move(benchmarks)), counters_(std::move(counters)), values_(std::move(values)) {
    if (values_.size() != benchmarks_.size() * counters_.size()) {
        throw Error(ErrorKind::Dimension, "stats matrix holds " + std::to_string(values_.size()) +
                                              " values, expected " +
                                              std::to_string(benchmarks_.size()) + "x" +
                                              std::to_string(counters_.size()));
    }
}

std::vector<double> StatsMatrix::column(std::size_t c) const {
    std::vector<double> out(rows());
    for (std::size_t r = 0; r < rows(); ++r) out[r] = at(r, c);
    return out;
}

std::optional<std::size_t> StatsMatrix::counter_index(const CounterId& name) const {
    for (std::size_t i = 0; i < counters_.size(); ++i)
        if (counters_[i] == name) return i;
    return std::nullopt;
}

std::optional<std::size_t> StatsMatrix::benchmark_index(const BenchmarkId& name) const {
    for (std::size_t i = 0; i < benchmarks_.size(); ++i)
        if (benchmarks_[i] == name) return i;
    return std::nullopt;
}

std::vector<std::vector<double>> StatsMatrix::row_vectors() const {
    std::vector<std::vector<double>> out;
    out.reserve(rows());
    for (std::size_t r = 0; r < rows(); ++r) {
        auto rv = row(r);
        out.emplace_back(rv.begin(), rv.end());
    }
    return out;
}

const CounterSeries* SuiteDataset::find_series(const CounterId& counter,
                                               const BenchmarkId& benchmark) const {
    auto it = series.find({counter, benchmark});
    return it == series.end() ? nullptr : &it->second;
}

std::vector<CounterId> SuiteDataset::complete_trend_counters() const {
    std::vector<CounterId> out;
    for (const auto& counter : stats.counters()) {
        bool complete = !stats.benchmarks().empty();
        for (const auto& bench : stats.benchmarks()) {
            if (!find_series(counter, bench)) {
                complete = false;
                break;
            }
        }
        if (complete) out.push_back(counter);
    }
    return out;
}

void validate_config(const RunConfig& config) {
    auto fail = [](const std::string& what) { throw Error(ErrorKind::Argument, what); };
    if (config.kmeans_restarts < 1) fail("kmeans_restarts must be a positive integer");
    if (config.kmeans_max_iters < 1) fail("kmeans_max_iters must be a positive integer");
    if (!(config.kmeans_tolerance > 0.0) || !std::isfinite(config.kmeans_tolerance))
        fail("kmeans_tolerance must be a positive real");
    if (!(config.variance_threshold > 0.0 && config.variance_threshold <= 1.0))
        fail("variance_threshold must lie in (0, 1]");
    if (config.resample_points < 2) fail("resample_points must be at least 2");
}

std::string Violation::describe() const {
    std::ostringstream out;
    out << message;
    if (benchmark || counter || row || column) {
        out << " [";
        const char* sep = "";
        if (benchmark) { out << sep << "benchmark=" << *benchmark; sep = ", "; }
        if (counter) { out << sep << "counter=" << *counter; sep = ", "; }
        if (row) { out << sep << "row=" << *row + 1; sep = ", "; }
        if (column) { out << sep << "column=" << *column + 1; }
        out << "]";
    }
    return out.str();
}

namespace {

void check_names(const std::vector<std::string>& names, const char* what,
                 std::vector<Violation>& out) {
    std::set<std::string> seen;
    for (const auto& name : names) {
        if (name.empty()) out.push_back({std::string("empty ") + what + " name", {}, {}, {}, {}});
        else if (!seen.insert(name).second)
            out.push_back({std::string("duplicate ") + what + " name '" + name + "'", {}, {}, {}, {}});
    }
}

}  // namespace

ValidationResult validate_stats(const StatsMatrix& stats) {
    ValidationResult result;
    auto& out = result.violations;
    if (stats.rows() < 1) out.push_back({"stats matrix has no benchmarks", {}, {}, {}, {}});
    if (stats.cols() < 1) out.push_back({"stats matrix has no counters", {}, {}, {}, {}});
    check_names(stats.benchmarks(), "benchmark", out);
    check_names(stats.counters(), "counter", out);
    if (stats.values().size() != stats.rows() * stats.cols()) {
        out.push_back({"stats matrix is ragged", {}, {}, {}, {}});
        return result;
    }
    for (std::size_t r = 0; r < stats.rows(); ++r) {
        for (std::size_t c = 0; c < stats.cols(); ++c) {
            const double v = stats.at(r, c);
            if (!std::isfinite(v))
                out.push_back({"non-finite value", stats.benchmarks()[r], stats.counters()[c], r, c});
            else if (v < 0.0)
                out.push_back({"negative value", stats.benchmarks()[r], stats.counters()[c], r, c});
        }
    }
    return result;
}

ValidationResult validate_series(const CounterSeries& series) {
    ValidationResult result;
    auto& out = result.violations;
    auto violation = [&](std::string msg) {
        out.push_back({"series " + series.counter + "/" + series.benchmark + ": " + std::move(msg),
                       series.benchmark, series.counter, {}, {}});
    };
    if (series.samples.size() < 2) violation("needs at least 2 samples");
    for (std::size_t i = 0; i < series.samples.size(); ++i) {
        const auto& s = series.samples[i];
        if (!std::isfinite(s.time) || !std::isfinite(s.value))
            violation("non-finite sample at index " + std::to_string(i));
        else if (s.value < 0.0)
            violation("negative value at index " + std::to_string(i));
        if (i > 0 && !(s.time > series.samples[i - 1].time))
            violation("timestamps not strictly increasing at index " + std::to_string(i));
    }
    return result;
}

ValidationResult validate_dataset(const SuiteDataset& dataset) {
    ValidationResult result = validate_stats(dataset.stats);
    auto& out = result.violations;
    for (const auto& [key, series] : dataset.series) {
        const auto& [counter, bench] = key;
        if (series.counter != counter || series.benchmark != bench) {
            out.push_back({"series stored under " + counter + "/" + bench + " describes " +
                               series.counter + "/" + series.benchmark,
                           bench, counter, {}, {}});
        }
        if (!dataset.stats.counter_index(counter))
            out.push_back({"series references unknown counter '" + counter + "'", bench, counter, {}, {}});
        if (!dataset.stats.benchmark_index(bench))
            out.push_back({"series references unknown benchmark '" + bench + "'", bench, counter, {}, {}});
        auto inner = validate_series(series);
        out.insert(out.end(), inner.violations.begin(), inner.violations.end());
    }
    return result;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw Error(ErrorKind::Dimension, "vector lengths differ: " + std::to_string(a.size()) +
                                              " vs " + std::to_string(b.size()));
    if (a.empty()) throw Error(ErrorKind::Dimension, "distance between empty vectors");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    return std::sqrt(squared_distance(a, b));
}

double mean(std::span<const double> values) {
    if (values.empty()) throw Error(ErrorKind::Size, "mean of an empty sequence");
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

double sample_variance(std::span<const double> values) {
    if (values.size() < 2) throw Error(ErrorKind::Size, "sample variance needs at least 2 values");
    const double mu = mean(values);
    double sum = 0.0;
    for (double v : values) sum += (v - mu) * (v - mu);
    return sum / static_cast<double>(values.size() - 1);
}

}  // namespace suitescore
