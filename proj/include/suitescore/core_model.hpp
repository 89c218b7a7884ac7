#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "suitescore/error.hpp"

namespace suitescore {

using BenchmarkId = std::string;
using CounterId = std::string;

/// Execution statistics of a suite: one row per benchmark, one column per counter.
/// Values are stored row-major.
class StatsMatrix {
public:
    StatsMatrix() = default;
    StatsMatrix(std::vector<BenchmarkId> benchmarks, std::vector<CounterId> counters,
                std::vector<double> values);

    std::size_t rows() const noexcept { return benchmarks_.size(); }
    std::size_t cols() const noexcept { return counters_.size(); }

    const std::vector<BenchmarkId>& benchmarks() const noexcept { return benchmarks_; }
    const std::vector<CounterId>& counters() const noexcept { return counters_; }
    const std::vector<double>& values() const noexcept { return values_; }

    double at(std::size_t row, std::size_t col) const { return values_[row * cols() + col]; }
    std::span<const double> row(std::size_t r) const {
        return {values_.data() + r * cols(), cols()};
    }
    std::vector<double> column(std::size_t c) const;

    std::optional<std::size_t> counter_index(const CounterId& name) const;
    std::optional<std::size_t> benchmark_index(const BenchmarkId& name) const;

    /// Row vectors, suitable as clustering input.
    std::vector<std::vector<double>> row_vectors() const;

    friend bool operator==(const StatsMatrix&, const StatsMatrix&) = default;

private:
    std::vector<BenchmarkId> benchmarks_;
    std::vector<CounterId> counters_;
    std::vector<double> values_;
};

struct Sample {
    double time = 0.0;  // seconds from run start
    double value = 0.0;
    friend bool operator==(const Sample&, const Sample&) = default;
};

struct CounterSeries {
    BenchmarkId benchmark;
    CounterId counter;
    std::vector<Sample> samples;
    friend bool operator==(const CounterSeries&, const CounterSeries&) = default;
};

/// Series are keyed by (counter, benchmark).
using SeriesKey = std::pair<CounterId, BenchmarkId>;

struct SuiteDataset {
    std::string suite_name;
    StatsMatrix stats;
    std::map<SeriesKey, CounterSeries> series;

    const CounterSeries* find_series(const CounterId& counter, const BenchmarkId& benchmark) const;
    /// Counters that have a series for every benchmark in `stats`, in stats column order.
    std::vector<CounterId> complete_trend_counters() const;
};

struct RunConfig {
    std::uint64_t seed = 0;
    int kmeans_restarts = 10;
    int kmeans_max_iters = 300;
    double kmeans_tolerance = 1e-8;
    double variance_threshold = 0.98;
    int resample_points = 101;
    bool standardize_for_clustering = true;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Throws Error(Argument) naming the first out-of-range field.
void validate_config(const RunConfig& config);

struct Violation {
    std::string message;
    std::optional<BenchmarkId> benchmark;
    std::optional<CounterId> counter;
    std::optional<std::size_t> row;     // 0-based stats row
    std::optional<std::size_t> column;  // 0-based stats column

    std::string describe() const;
};

struct ValidationResult {
    std::vector<Violation> violations;
    bool ok() const noexcept { return violations.empty(); }
};

ValidationResult validate_stats(const StatsMatrix& stats);
ValidationResult validate_series(const CounterSeries& series);
ValidationResult validate_dataset(const SuiteDataset& dataset);

/// sqrt(sum (a_i - b_i)^2). Throws Error(Dimension) on length mismatch or empty input.
double euclidean_distance(std::span<const double> a, std::span<const double> b);
double squared_distance(std::span<const double> a, std::span<const double> b);

/// Sample variance (divisor n-1) summed in index order. Requires at least two values.
double sample_variance(std::span<const double> values);
double mean(std::span<const double> values);

}  // namespace suitescore
