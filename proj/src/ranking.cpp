#include "suitescore/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <Eigen/Cholesky>
#include <Eigen/Core>

namespace suitescore {

namespace {

// Reciprocal condition estimate below which the Gram matrix counts as singular.
constexpr double kSingularRcond = 1e-12;
constexpr double kRidgeScale = 1e-8;

}  // namespace

double RegressionResult::coefficient(const CounterId& name) const {
    for (std::size_t i = 0; i < features.size(); ++i)
        if (features[i] == name) return coefficients[i];
    throw Error(ErrorKind::Argument, "no feature named '" + name + "'");
}

std::map<CounterId, double> RegressionResult::coefficient_map() const {
    std::map<CounterId, double> out;
    for (std::size_t i = 0; i < features.size(); ++i) out[features[i]] = coefficients[i];
    return out;
}

double RegressionResult::predict(std::span<const double> row) const {
    if (row.size() != features.size()) throw Error(ErrorKind::Dimension, "feature row has the wrong length");
    double z = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j)
        if (feature_sd[j] > 0.0) z += coefficients[j] * (row[j] - feature_mean[j]) / feature_sd[j];
    return target_mean + target_sd * z;
}

RegressionResult ols_fit(const std::vector<CounterId>& names, const std::vector<double>& features,
                         std::span<const double> target) {
    const auto n = target.size();
    const auto p = names.size();
    if (n < 2) throw Error(ErrorKind::Size, "regression needs at least 2 observations");
    if (p == 0) throw Error(ErrorKind::Argument, "regression needs at least one feature");
    if (features.size() != n * p)
        throw Error(ErrorKind::Dimension, "feature matrix does not match " + std::to_string(n) + " x " +
                                              std::to_string(p));
    if (std::set<CounterId>(names.begin(), names.end()).size() != p)
        throw Error(ErrorKind::Duplicate, "feature names are not unique");
    if (std::all_of(target.begin(), target.end(), [&](double v) { return v == target[0]; }))
        throw Error(ErrorKind::DegenerateTarget, "target is constant; nothing to explain");

    RegressionResult out;
    out.features = names;
    out.coefficients.assign(p, 0.0);
    out.feature_mean.assign(p, 0.0);
    out.feature_sd.assign(p, 0.0);
    out.target_mean = mean(target);
    out.target_sd = std::sqrt(sample_variance(target));

    std::vector<std::size_t> active;
    std::vector<double> column(n);
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t r = 0; r < n; ++r) column[r] = features[r * p + j];
        out.feature_mean[j] = mean(column);
        if (std::all_of(column.begin(), column.end(), [&](double v) { return v == column[0]; })) continue;
        out.feature_sd[j] = std::sqrt(sample_variance(column));
        active.push_back(j);
    }

    Eigen::VectorXd y(static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < n; ++r)
        y(static_cast<Eigen::Index>(r)) = (target[r] - out.target_mean) / out.target_sd;

    const auto q = static_cast<Eigen::Index>(active.size());
    Eigen::MatrixXd z(static_cast<Eigen::Index>(n), q);
    for (Eigen::Index a = 0; a < q; ++a) {
        const auto j = active[static_cast<std::size_t>(a)];
        for (std::size_t r = 0; r < n; ++r)
            z(static_cast<Eigen::Index>(r), a) = (features[r * p + j] - out.feature_mean[j]) / out.feature_sd[j];
    }

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(q);
    if (q > 0) {
        const Eigen::MatrixXd gram = z.transpose() * z;
        const Eigen::VectorXd rhs = z.transpose() * y;
        Eigen::LLT<Eigen::MatrixXd> llt(gram);
        if (llt.info() == Eigen::Success && llt.rcond() >= kSingularRcond) {
            beta = llt.solve(rhs);
        } else {
            out.ridge_used = true;
            out.ridge_lambda = kRidgeScale * gram.trace() / static_cast<double>(q);
            const Eigen::MatrixXd ridged = gram + out.ridge_lambda * Eigen::MatrixXd::Identity(q, q);
            beta = ridged.llt().solve(rhs);
        }
    }
    for (Eigen::Index a = 0; a < q; ++a) out.coefficients[active[static_cast<std::size_t>(a)]] = beta(a);

    const Eigen::VectorXd residual = y - z * beta;
    const double ss_res = residual.squaredNorm();
    const double ss_tot = y.squaredNorm();
    out.r_squared = std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);

    out.intercept = out.target_mean;
    for (std::size_t j = 0; j < p; ++j)
        if (out.feature_sd[j] > 0.0)
            out.intercept -= out.target_sd * out.coefficients[j] * out.feature_mean[j] / out.feature_sd[j];

    std::vector<std::size_t> order(p);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double ma = std::abs(out.coefficients[a]);
        const double mb = std::abs(out.coefficients[b]);
        if (ma != mb) return ma > mb;
        return names[a] < names[b];
    });
    for (auto idx : order) out.ranking.push_back(names[idx]);
    return out;
}

RegressionResult rank_counters(const StatsMatrix& stats, const CounterId& runtime_column) {
    const auto target_col = stats.counter_index(runtime_column);
    if (!target_col)
        throw Error(ErrorKind::Argument, "runtime column '" + runtime_column + "' not found in stats");

    std::vector<CounterId> names;
    for (std::size_t c = 0; c < stats.cols(); ++c)
        if (c != *target_col) names.push_back(stats.counters()[c]);
    std::vector<double> features;
    features.reserve(stats.rows() * names.size());
    for (std::size_t r = 0; r < stats.rows(); ++r)
        for (std::size_t c = 0; c < stats.cols(); ++c)
            if (c != *target_col) features.push_back(stats.at(r, c));
    return ols_fit(names, features, stats.column(*target_col));
}

}  // namespace suitescore
