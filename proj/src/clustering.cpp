#include "suitescore/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "suitescore/parallel.hpp"

namespace suitescore {

namespace {

/// Uniform double in [0, 1) from the top 53 bits; avoids the
/// implementation-defined std::uniform_real_distribution.
double next_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t next_index(std::mt19937_64& rng, std::size_t n) {
    return std::min(static_cast<std::size_t>(next_unit(rng) * static_cast<double>(n)), n - 1);
}

void check_points(const Points& points) {
    if (points.empty()) throw Error(ErrorKind::Size, "no points to cluster");
    const auto dim = points.front().size();
    if (dim == 0) throw Error(ErrorKind::Dimension, "points have zero dimensions");
    for (const auto& p : points)
        if (p.size() != dim) throw Error(ErrorKind::Dimension, "points have differing dimensions");
}

std::vector<std::vector<double>> seed_centroids(const Points& points, int k, std::mt19937_64& rng) {
    const auto n = points.size();
    std::vector<std::size_t> chosen;
    std::vector<bool> taken(n, false);
    chosen.push_back(next_index(rng, n));
    taken[chosen.back()] = true;

    std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
    while (chosen.size() < static_cast<std::size_t>(k)) {
        const auto& last = points[chosen.back()];
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            nearest[i] = std::min(nearest[i], squared_distance(points[i], last));
            total += nearest[i];
        }
        std::size_t pick = n;
        if (total > 0.0) {
            const double target = next_unit(rng) * total;
            double cumulative = 0.0;
            std::size_t last_positive = n;
            for (std::size_t i = 0; i < n; ++i) {
                if (nearest[i] <= 0.0) continue;
                last_positive = i;
                cumulative += nearest[i];
                if (cumulative > target) {
                    pick = i;
                    break;
                }
            }
            if (pick == n) pick = last_positive;
        } else {
            // Every point coincides with a chosen centroid: draw among the unused indices.
            std::vector<std::size_t> free;
            for (std::size_t i = 0; i < n; ++i)
                if (!taken[i]) free.push_back(i);
            pick = free[next_index(rng, free.size())];
        }
        chosen.push_back(pick);
        taken[pick] = true;
    }

    std::vector<std::vector<double>> centroids;
    centroids.reserve(chosen.size());
    for (auto idx : chosen) centroids.push_back(points[idx]);
    return centroids;
}

int nearest_centroid(const std::vector<double>& point, const std::vector<std::vector<double>>& centroids) {
    int best = 0;
    double best_d = squared_distance(point, centroids[0]);
    for (std::size_t j = 1; j < centroids.size(); ++j) {
        const double d = squared_distance(point, centroids[j]);
        if (d < best_d) {
            best_d = d;
            best = static_cast<int>(j);
        }
    }
    return best;
}

/// Moves, for each empty cluster, the point farthest from its own centroid
/// (taken from a cluster with at least two members) into the empty one.
void repair_empty_clusters(const Points& points, std::vector<int>& assignment,
                           std::vector<std::vector<double>>& centroids) {
    const int k = static_cast<int>(centroids.size());
    std::vector<int> counts(k, 0);
    for (int a : assignment) ++counts[a];
    for (int j = 0; j < k; ++j) {
        if (counts[j] > 0) continue;
        std::size_t donor = points.size();
        double worst = -1.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (counts[assignment[i]] < 2) continue;
            const double d = squared_distance(points[i], centroids[assignment[i]]);
            if (d > worst) {
                worst = d;
                donor = i;
            }
        }
        --counts[assignment[donor]];
        assignment[donor] = j;
        counts[j] = 1;
        centroids[j] = points[donor];
    }
}

std::vector<std::vector<double>> cluster_means(const Points& points, const std::vector<int>& assignment,
                                               int k) {
    const auto dim = points.front().size();
    std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        auto& s = sums[assignment[i]];
        for (std::size_t d = 0; d < dim; ++d) s[d] += points[i][d];
        ++counts[assignment[i]];
    }
    for (int j = 0; j < k; ++j)
        for (auto& v : sums[j]) v /= static_cast<double>(counts[j]);
    return sums;
}

double compute_inertia(const Points& points, const std::vector<int>& assignment,
                       const std::vector<std::vector<double>>& centroids) {
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        total += squared_distance(points[i], centroids[assignment[i]]);
    return total;
}

}  // namespace

StatsMatrix standardize_columns(const StatsMatrix& stats) {
    if (stats.rows() < 2) throw Error(ErrorKind::Size, "standardization needs at least 2 benchmarks");
    std::vector<double> values(stats.values().size());
    for (std::size_t c = 0; c < stats.cols(); ++c) {
        const auto col = stats.column(c);
        const bool constant = std::all_of(col.begin(), col.end(), [&](double v) { return v == col[0]; });
        if (constant) continue;  // zeros
        const double mu = mean(col);
        const double sd = std::sqrt(sample_variance(col));
        for (std::size_t r = 0; r < stats.rows(); ++r) values[r * stats.cols() + c] = (col[r] - mu) / sd;
    }
    return StatsMatrix(stats.benchmarks(), stats.counters(), std::move(values));
}

std::uint64_t restart_seed(std::uint64_t base_seed, int k, int restart) {
    std::seed_seq seq{static_cast<std::uint32_t>(base_seed), static_cast<std::uint32_t>(base_seed >> 32),
                      static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(restart)};
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

Clustering kmeans_single(const Points& points, int k, std::uint64_t seed, const RunConfig& config,
                         std::vector<double>* inertia_trace) {
    check_points(points);
    if (k < 1) throw Error(ErrorKind::Argument, "k must be at least 1");
    if (static_cast<std::size_t>(k) > points.size())
        throw Error(ErrorKind::Argument, "k = " + std::to_string(k) + " exceeds the number of points (" +
                                             std::to_string(points.size()) + ")");

    std::mt19937_64 rng(seed);
    auto centroids = seed_centroids(points, k, rng);
    std::vector<int> assignment(points.size(), 0);
    Clustering result;
    result.k = k;

    for (int iter = 1; iter <= config.kmeans_max_iters; ++iter) {
        for (std::size_t i = 0; i < points.size(); ++i) assignment[i] = nearest_centroid(points[i], centroids);
        repair_empty_clusters(points, assignment, centroids);
        auto updated = cluster_means(points, assignment, k);

        double shift = 0.0;
        for (int j = 0; j < k; ++j) shift = std::max(shift, euclidean_distance(updated[j], centroids[j]));
        centroids = std::move(updated);
        result.iterations = iter;
        if (inertia_trace) inertia_trace->push_back(compute_inertia(points, assignment, centroids));
        if (shift < config.kmeans_tolerance) break;
    }

    result.assignment = std::move(assignment);
    result.centroids = std::move(centroids);
    result.inertia = compute_inertia(points, result.assignment, result.centroids);
    return result;
}

Clustering kmeans(const Points& points, int k, const RunConfig& config) {
    validate_config(config);
    Clustering best;
    for (int r = 0; r < config.kmeans_restarts; ++r) {
        auto candidate = kmeans_single(points, k, restart_seed(config.seed, k, r), config);
        candidate.restart = r;
        if (r == 0 || candidate.inertia < best.inertia) best = std::move(candidate);
    }
    return best;
}

SilhouetteBreakdown silhouette(const Points& points, const Clustering& clustering) {
    check_points(points);
    const auto n = points.size();
    const int k = clustering.k;
    if (k < 1) throw Error(ErrorKind::Argument, "clustering has no clusters");
    if (clustering.assignment.size() != n)
        throw Error(ErrorKind::Dimension, "assignment does not cover every point");

    std::vector<std::vector<std::size_t>> members(k);
    for (std::size_t i = 0; i < n; ++i) {
        const int a = clustering.assignment[i];
        if (a < 0 || a >= k) throw Error(ErrorKind::Argument, "cluster index out of range");
        members[a].push_back(i);
    }
    for (int j = 0; j < k; ++j)
        if (members[j].empty())
            throw Error(ErrorKind::Argument, "cluster " + std::to_string(j) + " is empty");

    std::vector<double> dist(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t q = i + 1; q < n; ++q)
            dist[i * n + q] = dist[q * n + i] = euclidean_distance(points[i], points[q]);

    SilhouetteBreakdown out;
    out.per_point.assign(n, 0.0);
    out.intra.assign(n, 0.0);
    out.inter.assign(n, 0.0);
    if (k > 1) {
        for (std::size_t p = 0; p < n; ++p) {
            const int own = clustering.assignment[p];
            double separation = std::numeric_limits<double>::infinity();
            for (int j = 0; j < k; ++j) {
                if (j == own) continue;
                double sum = 0.0;
                for (auto q : members[j]) sum += dist[p * n + q];
                separation = std::min(separation, sum / static_cast<double>(members[j].size()));
            }
            out.inter[p] = separation;
            if (members[own].size() < 2) continue;  // singleton: S(p) = 0

            double sum = 0.0;
            for (auto q : members[own])
                if (q != p) sum += dist[p * n + q];
            const double cohesion = sum / static_cast<double>(members[own].size() - 1);
            out.intra[p] = cohesion;
            const double denom = std::max(separation, cohesion);
            out.per_point[p] = denom > 0.0 ? (separation - cohesion) / denom : 0.0;
        }
    }

    out.per_cluster.assign(k, 0.0);
    double suite = 0.0;
    for (int j = 0; j < k; ++j) {
        double sum = 0.0;
        for (auto q : members[j]) sum += out.per_point[q];
        out.per_cluster[j] = sum / static_cast<double>(members[j].size());
        suite += out.per_cluster[j];
    }
    out.suite_at_k = suite / static_cast<double>(k);
    return out;
}

ClusterScoreResult cluster_score(const StatsMatrix& stats, const RunConfig& config, unsigned jobs) {
    validate_config(config);
    const auto n = stats.rows();
    if (n < 3)
        throw Error(ErrorKind::Size, "ClusterScore needs at least 3 benchmarks: k ranges over 2..n-1, "
                                     "which is empty for n = " + std::to_string(n));

    // Canonical row order: lexicographic on the raw values.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        auto ra = stats.row(a);
        auto rb = stats.row(b);
        return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
    });
    std::vector<BenchmarkId> names;
    std::vector<double> values;
    for (auto idx : order) {
        names.push_back(stats.benchmarks()[idx]);
        auto r = stats.row(idx);
        values.insert(values.end(), r.begin(), r.end());
    }
    StatsMatrix canonical(std::move(names), stats.counters(), std::move(values));
    if (config.standardize_for_clustering) canonical = standardize_columns(canonical);
    const auto points = canonical.row_vectors();

    ClusterScoreResult result;
    result.benchmarks = stats.benchmarks();
    for (int k = 2; k <= static_cast<int>(n) - 1; ++k) result.ks.push_back(k);
    result.clusterings.resize(result.ks.size());
    result.breakdowns.resize(result.ks.size());

    parallel_for(result.ks.size(), jobs, [&](std::size_t i) {
        result.clusterings[i] = kmeans(points, result.ks[i], config);
        result.breakdowns[i] = silhouette(points, result.clusterings[i]);
    });

    double total = 0.0;
    for (const auto& b : result.breakdowns) total += b.suite_at_k;
    result.score = total / static_cast<double>(n - 2);

    // Report per-point data in input row order.
    for (std::size_t i = 0; i < result.ks.size(); ++i) {
        auto& c = result.clusterings[i];
        auto& b = result.breakdowns[i];
        std::vector<int> assignment(n);
        std::vector<double> per_point(n), intra(n), inter(n);
        for (std::size_t pos = 0; pos < n; ++pos) {
            assignment[order[pos]] = c.assignment[pos];
            per_point[order[pos]] = b.per_point[pos];
            intra[order[pos]] = b.intra[pos];
            inter[order[pos]] = b.inter[pos];
        }
        c.assignment = std::move(assignment);
        b.per_point = std::move(per_point);
        b.intra = std::move(intra);
        b.inter = std::move(inter);
    }
    return result;
}

}  // namespace suitescore
