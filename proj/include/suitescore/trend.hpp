#pragma once

#include <map>
#include <span>
#include <tuple>
#include <vector>

#include "suitescore/core_model.hpp"

namespace suitescore {

/// A counter trace on the uniform percentile grid 0..100 (inclusive); each y
/// value is a CDF rank in [0, 100].
struct NormalizedSeries {
    BenchmarkId benchmark;
    CounterId counter;
    std::vector<double> y;

    /// x coordinate (percent of execution) of grid point i.
    double x_at(std::size_t i) const;
    friend bool operator==(const NormalizedSeries&, const NormalizedSeries&) = default;
};

/// Replaces each value v by 100 * #{samples <= v} / N. Timestamps are kept.
CounterSeries cdf_normalize(const CounterSeries& series);

/// Piecewise-linear value of the series at time t, clamped to the end points.
double interpolate_at(const CounterSeries& series, double t);

/// Samples the series at `points` equally spaced percentiles of its run time.
NormalizedSeries percentile_resample(const CounterSeries& series, int points);

/// cdf_normalize followed by percentile_resample.
NormalizedSeries normalize_series(const CounterSeries& series, int points);

struct DtwResult {
    double raw_cost = 0.0;       // accumulated |a_i - b_j| along the optimal path
    std::size_t path_length = 0; // cells on that path
    double distance = 0.0;       // raw_cost / path_length
};

/// Unconstrained DTW with steps (1,0), (0,1), (1,1). Among equal-cost paths
/// the shortest one is taken; costs closer than the accumulated rounding
/// bound (8 eps * max|value| * (|a| + |b|)) count as equal.
DtwResult dtw(std::span<const double> a, std::span<const double> b);
double dtw_distance(const NormalizedSeries& a, const NormalizedSeries& b);

struct TScoreResult {
    CounterId counter;
    double score = 0.0;
    std::vector<BenchmarkId> benchmarks;
    std::vector<NormalizedSeries> normalized;  // one per benchmark, stats row order
    std::vector<double> distances;             // n x n, row-major; diagonal is 0
    std::vector<double> raw_costs;             // n x n unnormalized DTW costs

    double distance(std::size_t i, std::size_t j) const { return distances[i * benchmarks.size() + j]; }
};

TScoreResult tscore(const CounterId& counter, const SuiteDataset& dataset, const RunConfig& config,
                    unsigned jobs = 1);

/// Key: (counter, benchmark, benchmark) over ordered pairs.
using PairKey = std::tuple<CounterId, BenchmarkId, BenchmarkId>;

struct TrendBreakdown {
    std::vector<TScoreResult> counters;  // in the requested counter order
    std::map<CounterId, double> per_counter;
    std::map<PairKey, double> per_pair;
    double trend_score = 0.0;
};

TrendBreakdown trend_score(const SuiteDataset& dataset, const std::vector<CounterId>& counters,
                           const RunConfig& config, unsigned jobs = 1);

}  // namespace suitescore
