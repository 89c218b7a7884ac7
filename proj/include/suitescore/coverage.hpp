#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "suitescore/core_model.hpp"

namespace suitescore {

/// Per-counter (min, max) used to map a column onto [0, 1].
using Bounds = std::map<CounterId, std::pair<double, double>>;

/// Maps each column onto [0, 1] via (x - min) / (max - min). Without bounds each
/// column uses its own range; with bounds values are clamped. A column whose
/// range is empty maps to 0.5.
StatsMatrix minmax_normalize(const StatsMatrix& stats, const std::optional<Bounds>& bounds = std::nullopt);

/// Column-wise min/max over the union of the given matrices' rows.
Bounds shared_bounds(const std::vector<const StatsMatrix*>& matrices);

struct PcaModel {
    std::vector<double> mean;                       // length m
    std::vector<std::vector<double>> components;    // d retained unit vectors, length m each
    std::vector<double> eigenvalues;                // d retained, non-increasing
    std::vector<std::vector<double>> basis;         // all m eigenvectors
    std::vector<double> spectrum;                   // all m eigenvalues, non-increasing, clamped >= 0
    double total_variance = 0.0;                    // sum of the spectrum
    std::size_t d = 0;

    double explained_ratio() const;
};

struct PcaFit {
    PcaModel model;
    std::vector<std::vector<double>> scores;  // n x d projections of the centered data
};

/// PCA on the sample covariance (divisor n-1) keeping the smallest d whose
/// cumulative explained variance reaches `variance_threshold`. Each
/// component's largest-magnitude entry is non-negative.
PcaFit pca_fit(const StatsMatrix& stats, double variance_threshold);

/// Projects centered rows onto every basis vector and maps back; used to check
/// that the basis is complete.
std::vector<std::vector<double>> pca_reconstruct(const PcaModel& model,
                                                 const std::vector<std::vector<double>>& rows);

struct CoverageResult {
    double score = 0.0;
    PcaModel model;
    bool shared_bounds = false;
};

/// minmax_normalize -> pca_fit -> mean retained eigenvalue.
CoverageResult coverage_score(const StatsMatrix& stats, const RunConfig& config,
                              const std::optional<Bounds>& bounds = std::nullopt);

struct CoverageComparison {
    std::vector<std::string> suite_names;
    Bounds bounds;
    std::vector<CoverageResult> shared;      // joint bounds, comparable across suites
    std::vector<CoverageResult> per_suite;   // each suite normalized by its own range
};

/// Requires at least two suites with the same counter names.
CoverageComparison compare_coverage(const std::vector<const SuiteDataset*>& suites, const RunConfig& config);

}  // namespace suitescore
