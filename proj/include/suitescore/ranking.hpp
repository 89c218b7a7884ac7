#pragma once

#include <map>
#include <span>
#include <vector>

#include "suitescore/core_model.hpp"

namespace suitescore {

/// Multiple linear regression on z-scored features and target. Coefficients
/// are in standardized units, so their magnitudes are comparable across
/// counters with different scales.
struct RegressionResult {
    std::vector<CounterId> features;   // input order
    std::vector<double> coefficients;  // standardized, aligned with `features`
    double intercept = 0.0;            // in raw target units
    double r_squared = 0.0;
    std::vector<CounterId> ranking;    // by |coefficient| descending, ties by name
    bool ridge_used = false;
    double ridge_lambda = 0.0;

    // Standardization parameters, for predict().
    std::vector<double> feature_mean;
    std::vector<double> feature_sd;    // 0 marks an excluded constant feature
    double target_mean = 0.0;
    double target_sd = 0.0;

    double coefficient(const CounterId& name) const;
    std::map<CounterId, double> coefficient_map() const;
    /// Predicted raw target for one raw feature row.
    double predict(std::span<const double> row) const;
};

/// `features` is row-major n x names.size().
RegressionResult ols_fit(const std::vector<CounterId>& names, const std::vector<double>& features,
                         std::span<const double> target);

/// Regresses `runtime_column` on every other column of `stats`.
RegressionResult rank_counters(const StatsMatrix& stats, const CounterId& runtime_column);

}  // namespace suitescore
