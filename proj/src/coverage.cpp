#include "suitescore/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <Eigen/Eigenvalues>

namespace suitescore {

StatsMatrix minmax_normalize(const StatsMatrix& stats, const std::optional<Bounds>& bounds) {
    std::vector<double> values(stats.values().size());
    for (std::size_t c = 0; c < stats.cols(); ++c) {
        const auto col = stats.column(c);
        double lo = 0.0;
        double hi = 0.0;
        if (bounds) {
            const auto it = bounds->find(stats.counters()[c]);
            if (it == bounds->end())
                throw Error(ErrorKind::Argument, "bounds missing counter '" + stats.counters()[c] + "'");
            std::tie(lo, hi) = it->second;
            if (!(lo <= hi))
                throw Error(ErrorKind::Argument, "bounds for '" + stats.counters()[c] + "' have min > max");
        } else {
            const auto [mn, mx] = std::minmax_element(col.begin(), col.end());
            lo = *mn;
            hi = *mx;
        }
        for (std::size_t r = 0; r < stats.rows(); ++r) {
            double v = hi > lo ? (col[r] - lo) / (hi - lo) : 0.5;
            values[r * stats.cols() + c] = std::clamp(v, 0.0, 1.0);
        }
    }
    return StatsMatrix(stats.benchmarks(), stats.counters(), std::move(values));
}

Bounds shared_bounds(const std::vector<const StatsMatrix*>& matrices) {
    Bounds out;
    for (const auto* m : matrices) {
        for (std::size_t c = 0; c < m->cols(); ++c) {
            const auto col = m->column(c);
            const auto [mn, mx] = std::minmax_element(col.begin(), col.end());
            auto [it, fresh] = out.try_emplace(m->counters()[c], *mn, *mx);
            if (!fresh) {
                it->second.first = std::min(it->second.first, *mn);
                it->second.second = std::max(it->second.second, *mx);
            }
        }
    }
    return out;
}

double PcaModel::explained_ratio() const {
    if (total_variance <= 0.0) return 1.0;
    double kept = 0.0;
    for (double e : eigenvalues) kept += e;
    return kept / total_variance;
}

PcaFit pca_fit(const StatsMatrix& stats, double variance_threshold) {
    const auto n = stats.rows();
    const auto m = stats.cols();
    if (n < 2) throw Error(ErrorKind::Size, "PCA needs at least 2 benchmarks");
    if (!(variance_threshold > 0.0 && variance_threshold <= 1.0))
        throw Error(ErrorKind::Argument, "variance threshold must lie in (0, 1]");

    PcaFit fit;
    auto& model = fit.model;
    model.mean.resize(m);
    for (std::size_t c = 0; c < m; ++c) model.mean[c] = mean(stats.column(c));

    std::vector<double> centered(n * m);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < m; ++c) centered[r * m + c] = stats.at(r, c) - model.mean[c];

    Eigen::MatrixXd cov(m, m);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a; b < m; ++b) {
            double sum = 0.0;
            for (std::size_t r = 0; r < n; ++r) sum += centered[r * m + a] * centered[r * m + b];
            cov(a, b) = cov(b, a) = sum / static_cast<double>(n - 1);
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) throw Error(ErrorKind::Argument, "eigendecomposition failed");
    const auto& evals = solver.eigenvalues();   // ascending
    const auto& evecs = solver.eigenvectors();

    for (std::size_t i = 0; i < m; ++i) {
        const auto src = static_cast<Eigen::Index>(m - 1 - i);
        model.spectrum.push_back(std::max(0.0, evals(src)));
        std::vector<double> v(m);
        std::size_t largest = 0;
        for (std::size_t c = 0; c < m; ++c) {
            v[c] = evecs(static_cast<Eigen::Index>(c), src);
            if (std::abs(v[c]) > std::abs(v[largest])) largest = c;
        }
        if (v[largest] < 0.0)
            for (auto& x : v) x = -x;
        model.basis.push_back(std::move(v));
    }
    model.total_variance = std::accumulate(model.spectrum.begin(), model.spectrum.end(), 0.0);

    // Zero-variance data keeps a single (zero) component.
    std::size_t d = 1;
    if (model.total_variance > 0.0) {
        double cumulative = 0.0;
        for (d = 1; d <= m; ++d) {
            cumulative += model.spectrum[d - 1];
            if (cumulative / model.total_variance >= variance_threshold) break;
        }
        d = std::min(d, m);
    }
    model.d = d;
    model.components.assign(model.basis.begin(), model.basis.begin() + static_cast<std::ptrdiff_t>(d));
    model.eigenvalues.assign(model.spectrum.begin(), model.spectrum.begin() + static_cast<std::ptrdiff_t>(d));

    fit.scores.assign(n, std::vector<double>(d, 0.0));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t i = 0; i < d; ++i) {
            double dot = 0.0;
            for (std::size_t c = 0; c < m; ++c) dot += centered[r * m + c] * model.components[i][c];
            fit.scores[r][i] = dot;
        }
    return fit;
}

std::vector<std::vector<double>> pca_reconstruct(const PcaModel& model,
                                                 const std::vector<std::vector<double>>& rows) {
    const auto m = model.mean.size();
    std::vector<std::vector<double>> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        if (row.size() != m) throw Error(ErrorKind::Dimension, "row length does not match the PCA model");
        std::vector<double> rebuilt(m, 0.0);
        for (const auto& axis : model.basis) {
            double dot = 0.0;
            for (std::size_t c = 0; c < m; ++c) dot += (row[c] - model.mean[c]) * axis[c];
            for (std::size_t c = 0; c < m; ++c) rebuilt[c] += dot * axis[c];
        }
        out.push_back(std::move(rebuilt));
    }
    return out;
}

CoverageResult coverage_score(const StatsMatrix& stats, const RunConfig& config,
                              const std::optional<Bounds>& bounds) {
    validate_config(config);
    const auto normalized = minmax_normalize(stats, bounds);

    // Canonical row order makes the score independent of the input order bit for bit.
    std::vector<std::size_t> order(normalized.rows());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        auto ra = normalized.row(a);
        auto rb = normalized.row(b);
        return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
    });
    std::vector<BenchmarkId> names;
    std::vector<double> values;
    for (auto idx : order) {
        names.push_back(normalized.benchmarks()[idx]);
        auto r = normalized.row(idx);
        values.insert(values.end(), r.begin(), r.end());
    }
    const StatsMatrix canonical(std::move(names), normalized.counters(), std::move(values));

    CoverageResult result;
    result.model = pca_fit(canonical, config.variance_threshold).model;
    result.shared_bounds = bounds.has_value();
    double sum = 0.0;
    for (double e : result.model.eigenvalues) sum += e;
    result.score = sum / static_cast<double>(result.model.d);
    return result;
}

CoverageComparison compare_coverage(const std::vector<const SuiteDataset*>& suites, const RunConfig& config) {
    if (suites.size() < 2) throw Error(ErrorKind::Argument, "comparison needs at least two suites");
    const std::set<CounterId> reference(suites.front()->stats.counters().begin(),
                                        suites.front()->stats.counters().end());
    for (std::size_t s = 1; s < suites.size(); ++s) {
        const std::set<CounterId> other(suites[s]->stats.counters().begin(), suites[s]->stats.counters().end());
        if (other == reference) continue;
        std::vector<CounterId> diff;
        std::set_symmetric_difference(reference.begin(), reference.end(), other.begin(), other.end(),
                                      std::back_inserter(diff));
        std::string msg = "suites '" + suites.front()->suite_name + "' and '" + suites[s]->suite_name +
                          "' have different counter sets; symmetric difference:";
        for (const auto& c : diff) msg += " " + c;
        throw Error(ErrorKind::Comparability, msg);
    }

    CoverageComparison out;
    std::vector<const StatsMatrix*> matrices;
    for (const auto* s : suites) {
        out.suite_names.push_back(s->suite_name);
        matrices.push_back(&s->stats);
    }
    out.bounds = shared_bounds(matrices);
    for (const auto* s : suites) {
        out.shared.push_back(coverage_score(s->stats, config, out.bounds));
        out.per_suite.push_back(coverage_score(s->stats, config));
    }
    return out;
}

}  // namespace suitescore
