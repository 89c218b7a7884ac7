#include "suitescore/trend.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "suitescore/parallel.hpp"

namespace suitescore {

double NormalizedSeries::x_at(std::size_t i) const {
    if (y.size() < 2) return 0.0;
    return 100.0 * static_cast<double>(i) / static_cast<double>(y.size() - 1);
}

CounterSeries cdf_normalize(const CounterSeries& series) {
    std::vector<double> sorted;
    sorted.reserve(series.samples.size());
    for (const auto& s : series.samples) sorted.push_back(s.value);
    std::sort(sorted.begin(), sorted.end());

    const auto total = static_cast<double>(sorted.size());
    CounterSeries out = series;
    for (auto& s : out.samples) {
        const auto at_or_below = std::upper_bound(sorted.begin(), sorted.end(), s.value) - sorted.begin();
        s.value = 100.0 * static_cast<double>(at_or_below) / total;
    }
    return out;
}

double interpolate_at(const CounterSeries& series, double t) {
    const auto& s = series.samples;
    if (s.empty()) throw Error(ErrorKind::Size, "cannot interpolate an empty series");
    if (t <= s.front().time) return s.front().value;
    if (t >= s.back().time) return s.back().value;
    // First sample strictly after t; t lies in [hi-1, hi).
    const auto hi = std::upper_bound(s.begin(), s.end(), t,
                                     [](double v, const Sample& x) { return v < x.time; });
    const auto lo = hi - 1;
    const double w = (t - lo->time) / (hi->time - lo->time);
    return lo->value + w * (hi->value - lo->value);
}

NormalizedSeries percentile_resample(const CounterSeries& series, int points) {
    if (points < 2) throw Error(ErrorKind::Argument, "resampling needs at least 2 points");
    if (series.samples.size() < 2)
        throw Error(ErrorKind::Size, "series " + series.counter + "/" + series.benchmark +
                                         " needs at least 2 samples");
    // Interpolate on fractional positions (t - t0) / span rather than on raw
    // times: the positions are ratios of differences, so rescaled or shifted
    // timestamps give the same grid up to a rounding or two.
    const auto& s = series.samples;
    const double t0 = s.front().time;
    const double span = s.back().time - t0;
    std::vector<double> u(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) u[k] = (s[k].time - t0) / span;
    u.back() = 1.0;

    NormalizedSeries out{series.benchmark, series.counter, std::vector<double>(points)};
    const auto last = static_cast<std::size_t>(points - 1);
    std::size_t k = 0;
    for (std::size_t i = 0; i <= last; ++i) {
        const double f = i == last ? 1.0 : static_cast<double>(i) / static_cast<double>(last);
        while (k + 2 < s.size() && u[k + 1] <= f) ++k;
        const double width = u[k + 1] - u[k];
        const double w = width > 0.0 ? std::min(1.0, (f - u[k]) / width) : 1.0;
        out.y[i] = s[k].value + w * (s[k + 1].value - s[k].value);
    }
    return out;
}

NormalizedSeries normalize_series(const CounterSeries& series, int points) {
    return percentile_resample(cdf_normalize(series), points);
}

DtwResult dtw(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw Error(ErrorKind::Argument, "DTW of an empty series");
    const auto rows = a.size();
    const auto cols = b.size();
    // Path costs that differ by less than the rounding a path can accumulate
    // are treated as equal, so that exact ties in the underlying values are
    // still resolved by path length after floating-point noise.
    double scale = 0.0;
    for (double v : a) scale = std::max(scale, std::abs(v));
    for (double v : b) scale = std::max(scale, std::abs(v));
    const double tie = 8.0 * std::numeric_limits<double>::epsilon() * scale * static_cast<double>(rows + cols);

    struct Cell {
        double cost;
        std::size_t length;
    };
    std::vector<Cell> table(rows * cols);
    auto at = [&](std::size_t i, std::size_t j) -> Cell& { return table[i * cols + j]; };

    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const double step = std::abs(a[i] - b[j]);
            if (i == 0 && j == 0) {
                at(i, j) = {step, 1};
                continue;
            }
            const Cell* cand[3] = {nullptr, nullptr, nullptr};
            if (i > 0 && j > 0) cand[0] = &at(i - 1, j - 1);
            if (i > 0) cand[1] = &at(i - 1, j);
            if (j > 0) cand[2] = &at(i, j - 1);
            // Order-independent choice (keeps dtw(a, b) == dtw(b, a)): among
            // candidates within `tie` of the cheapest, the shortest, then the cheapest.
            double cheapest = std::numeric_limits<double>::infinity();
            for (const Cell* c : cand)
                if (c) cheapest = std::min(cheapest, c->cost);
            const Cell* best = nullptr;
            for (const Cell* c : cand) {
                if (!c || c->cost > cheapest + tie) continue;
                if (!best || c->length < best->length || (c->length == best->length && c->cost < best->cost))
                    best = c;
            }
            at(i, j) = {best->cost + step, best->length + 1};
        }
    }
    const auto& end = at(rows - 1, cols - 1);
    return {end.cost, end.length, end.cost / static_cast<double>(end.length)};
}

double dtw_distance(const NormalizedSeries& a, const NormalizedSeries& b) {
    return dtw(a.y, b.y).distance;
}

TScoreResult tscore(const CounterId& counter, const SuiteDataset& dataset, const RunConfig& config,
                    unsigned jobs) {
    validate_config(config);
    const auto& benchmarks = dataset.stats.benchmarks();
    const auto n = benchmarks.size();
    if (n < 2) throw Error(ErrorKind::Size, "TScore needs at least 2 benchmarks");

    std::vector<const CounterSeries*> raw(n);
    for (std::size_t i = 0; i < n; ++i) {
        raw[i] = dataset.find_series(counter, benchmarks[i]);
        if (!raw[i])
            throw Error(ErrorKind::Completeness,
                        "missing series for counter '" + counter + "', benchmark '" + benchmarks[i] + "'");
    }

    TScoreResult result;
    result.counter = counter;
    result.benchmarks = benchmarks;
    result.normalized.resize(n);
    parallel_for(n, jobs, [&](std::size_t i) {
        result.normalized[i] = normalize_series(*raw[i], config.resample_points);
    });

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    std::vector<DtwResult> pair_results(pairs.size());
    parallel_for(pairs.size(), jobs, [&](std::size_t p) {
        pair_results[p] = dtw(result.normalized[pairs[p].first].y, result.normalized[pairs[p].second].y);
    });

    result.distances.assign(n * n, 0.0);
    result.raw_costs.assign(n * n, 0.0);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const auto [i, j] = pairs[p];
        result.distances[i * n + j] = result.distances[j * n + i] = pair_results[p].distance;
        result.raw_costs[i * n + j] = result.raw_costs[j * n + i] = pair_results[p].raw_cost;
    }

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) total += result.distances[i * n + j];
    result.score = total / static_cast<double>(n * (n - 1));
    return result;
}

TrendBreakdown trend_score(const SuiteDataset& dataset, const std::vector<CounterId>& counters,
                           const RunConfig& config, unsigned jobs) {
    if (counters.empty()) throw Error(ErrorKind::Argument, "TrendScore needs at least one counter");
    std::set<CounterId> unique(counters.begin(), counters.end());
    if (unique.size() != counters.size())
        throw Error(ErrorKind::Argument, "counter list contains duplicates");

    TrendBreakdown out;
    out.counters.reserve(counters.size());
    double total = 0.0;
    for (const auto& counter : counters) {
        auto ts = tscore(counter, dataset, config, jobs);
        total += ts.score;
        out.per_counter[counter] = ts.score;
        const auto n = ts.benchmarks.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) out.per_pair[{counter, ts.benchmarks[i], ts.benchmarks[j]}] = ts.distance(i, j);
        out.counters.push_back(std::move(ts));
    }
    out.trend_score = total / static_cast<double>(counters.size());
    return out;
}

}  // namespace suitescore
