#pragma once

#include <cstdint>
#include <vector>

#include "suitescore/core_model.hpp"

namespace suitescore {

using Points = std::vector<std::vector<double>>;

struct Clustering {
    int k = 0;
    std::vector<int> assignment;              // cluster index per point, in [0, k)
    std::vector<std::vector<double>> centroids;
    double inertia = 0.0;                     // sum of squared distances to assigned centroid
    int iterations = 0;
    int restart = 0;                          // index of the winning restart
};

/// Per-point silhouette terms. intra/inter hold the cohesion and separation
/// distances used for each point (both 0 when the point is alone in its cluster
/// or k == 1).
struct SilhouetteBreakdown {
    std::vector<double> per_point;
    std::vector<double> intra;
    std::vector<double> inter;
    std::vector<double> per_cluster;
    double suite_at_k = 0.0;
};

/// (x - mean) / sd per column, sample sd. Constant columns become zeros.
StatsMatrix standardize_columns(const StatsMatrix& stats);

/// One seeded k-means++ + Lloyd run. `inertia_trace` (optional) receives the
/// inertia after every iteration.
Clustering kmeans_single(const Points& points, int k, std::uint64_t seed, const RunConfig& config,
                         std::vector<double>* inertia_trace = nullptr);

/// Best of config.kmeans_restarts runs; restart seeds derive from config.seed.
Clustering kmeans(const Points& points, int k, const RunConfig& config);

/// Seed used for restart `restart` when clustering with k clusters.
std::uint64_t restart_seed(std::uint64_t base_seed, int k, int restart);

SilhouetteBreakdown silhouette(const Points& points, const Clustering& clustering);

struct ClusterScoreResult {
    double score = 0.0;
    std::vector<BenchmarkId> benchmarks;       // in input row order
    std::vector<int> ks;                       // 2 .. n-1
    std::vector<Clustering> clusterings;       // assignments in input row order
    std::vector<SilhouetteBreakdown> breakdowns;
};

/// Mean silhouette over k = 2..n-1. Rows are put in a canonical order before
/// clustering, so the result does not depend on the input row order.
ClusterScoreResult cluster_score(const StatsMatrix& stats, const RunConfig& config, unsigned jobs = 1);

}  // namespace suitescore
