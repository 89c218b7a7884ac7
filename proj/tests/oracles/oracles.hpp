#pragma once

// Reference implementations used only by the tests. They are written straight
// from the metric definitions (brute force, exhaustive enumeration, explicit
// rotations) and deliberately share no code with the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

inline double dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

struct Silhouette {
    std::vector<double> per_point;
    std::vector<double> per_cluster;
    double suite = 0.0;
};

/// O(n^2) silhouette straight from the cohesion/separation definitions.
inline Silhouette silhouette(const Matrix& pts, const std::vector<int>& label, int k) {
    const auto n = pts.size();
    Silhouette out;
    out.per_point.assign(n, 0.0);
    std::vector<int> size(k, 0);
    for (int l : label) ++size[l];
    for (std::size_t p = 0; p < n && k > 1; ++p) {
        const int own = label[p];
        if (size[own] == 1) continue;
        double eta = 0.0;
        for (std::size_t q = 0; q < n; ++q)
            if (q != p && label[q] == own) eta += dist(pts[p], pts[q]);
        eta /= size[own] - 1;
        double lambda = std::numeric_limits<double>::infinity();
        for (int j = 0; j < k; ++j) {
            if (j == own) continue;
            double c = 0.0;
            for (std::size_t q = 0; q < n; ++q)
                if (label[q] == j) c += dist(pts[p], pts[q]);
            lambda = std::min(lambda, c / size[j]);
        }
        const double denom = std::max(lambda, eta);
        out.per_point[p] = denom == 0.0 ? 0.0 : (lambda - eta) / denom;
    }
    out.per_cluster.assign(k, 0.0);
    for (std::size_t p = 0; p < n; ++p) out.per_cluster[label[p]] += out.per_point[p] / size[label[p]];
    for (double v : out.per_cluster) out.suite += v;
    out.suite /= k;
    return out;
}

/// Calls fn(labels) for every partition of n items into exactly k non-empty blocks
/// (restricted-growth strings).
inline void for_each_partition(std::size_t n, int k, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> labels(n, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int used) {
        if (i == n) {
            if (used == k) fn(labels);
            return;
        }
        if (static_cast<int>(n - i) < k - used) return;
        for (int l = 0; l <= std::min(used, k - 1); ++l) {
            labels[i] = l;
            rec(i + 1, std::max(used, l + 1));
        }
    };
    rec(0, 0);
}

inline double inertia(const Matrix& pts, const std::vector<int>& labels, int k) {
    const auto dim = pts[0].size();
    Matrix c(k, std::vector<double>(dim, 0.0));
    std::vector<int> cnt(k, 0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t d = 0; d < dim; ++d) c[labels[i]][d] += pts[i][d];
        ++cnt[labels[i]];
    }
    double total = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t d = 0; d < dim; ++d) {
            const double diff = pts[i][d] - c[labels[i]][d] / cnt[labels[i]];
            total += diff * diff;
        }
    return total;
}

/// Globally optimal k-partition by exhaustive search.
inline std::pair<std::vector<int>, double> best_partition(const Matrix& pts, int k) {
    std::vector<int> best;
    double best_inertia = std::numeric_limits<double>::infinity();
    for_each_partition(pts.size(), k, [&](const std::vector<int>& labels) {
        const double v = inertia(pts, labels, k);
        if (v < best_inertia) {
            best_inertia = v;
            best = labels;
        }
    });
    return {best, best_inertia};
}

struct PathCost {
    double cost;
    std::size_t length;
};

/// Cheapest monotone warping path by enumerating every path; shortest among ties.
inline PathCost dtw_enumerate(const std::vector<double>& a, const std::vector<double>& b) {
    PathCost best{std::numeric_limits<double>::infinity(), 0};
    std::function<void(std::size_t, std::size_t, double, std::size_t)> walk =
        [&](std::size_t i, std::size_t j, double cost, std::size_t len) {
            cost += std::abs(a[i] - b[j]);
            ++len;
            if (i == a.size() - 1 && j == b.size() - 1) {
                if (cost < best.cost || (cost == best.cost && len < best.length)) best = {cost, len};
                return;
            }
            if (i + 1 < a.size() && j + 1 < b.size()) walk(i + 1, j + 1, cost, len);
            if (i + 1 < a.size()) walk(i + 1, j, cost, len);
            if (j + 1 < b.size()) walk(i, j + 1, cost, len);
        };
    walk(0, 0, 0.0, 0);
    return best;
}

/// Cyclic Jacobi rotations. Returns eigenvalues (descending) and matching
/// eigenvectors as rows.
inline std::pair<std::vector<double>, Matrix> jacobi_eigen(Matrix a) {
    const auto n = a.size();
    Matrix v(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t r = 0; r < n; ++r) {
                    const double arp = a[r][p], arq = a[r][q];
                    a[r][p] = c * arp - s * arq;
                    a[r][q] = s * arp + c * arq;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const double apr = a[p][r], aqr = a[q][r];
                    a[p][r] = c * apr - s * aqr;
                    a[q][r] = s * apr + c * aqr;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const double vrp = v[r][p], vrq = v[r][q];
                    v[r][p] = c * vrp - s * vrq;
                    v[r][q] = s * vrp + c * vrq;
                }
            }
        }
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a[x][x] > a[y][y]; });
    std::vector<double> values;
    Matrix vectors;
    for (auto i : order) {
        values.push_back(a[i][i]);
        std::vector<double> col(n);
        for (std::size_t r = 0; r < n; ++r) col[r] = v[r][i];
        vectors.push_back(col);
    }
    return {values, vectors};
}

/// Sample covariance (divisor n-1) of the rows of x.
inline Matrix covariance(const Matrix& x) {
    const auto n = x.size(), m = x[0].size();
    std::vector<double> mu(m, 0.0);
    for (const auto& r : x)
        for (std::size_t c = 0; c < m; ++c) mu[c] += r[c] / n;
    Matrix cov(m, std::vector<double>(m, 0.0));
    for (const auto& r : x)
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b) cov[a][b] += (r[a] - mu[a]) * (r[b] - mu[b]) / (n - 1);
    return cov;
}

/// Least squares via modified Gram-Schmidt QR: returns argmin ||X b - y||.
/// X is n x p with full column rank.
inline std::vector<double> least_squares_qr(Matrix x, std::vector<double> y) {
    const auto n = x.size(), p = x[0].size();
    Matrix q(p, std::vector<double>(n));
    Matrix r(p, std::vector<double>(p, 0.0));
    for (std::size_t j = 0; j < p; ++j)
        for (std::size_t i = 0; i < n; ++i) q[j][i] = x[i][j];
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += q[k][i] * q[j][i];
            r[k][j] = dot;
            for (std::size_t i = 0; i < n; ++i) q[j][i] -= dot * q[k][i];
        }
        double norm = 0.0;
        for (double v : q[j]) norm += v * v;
        norm = std::sqrt(norm);
        r[j][j] = norm;
        for (double& v : q[j]) v /= norm;
    }
    std::vector<double> qty(p, 0.0);
    for (std::size_t j = 0; j < p; ++j)
        for (std::size_t i = 0; i < n; ++i) qty[j] += q[j][i] * y[i];
    std::vector<double> beta(p, 0.0);
    for (std::size_t j = p; j-- > 0;) {
        double s = qty[j];
        for (std::size_t k = j + 1; k < p; ++k) s -= r[j][k] * beta[k];
        beta[j] = s / r[j][j];
    }
    return beta;
}

/// z-score with sample sd.
inline std::vector<double> zscore(const std::vector<double>& v) {
    double mu = 0.0;
    for (double x : v) mu += x / v.size();
    double var = 0.0;
    for (double x : v) var += (x - mu) * (x - mu) / (v.size() - 1);
    std::vector<double> out;
    for (double x : v) out.push_back((x - mu) / std::sqrt(var));
    return out;
}

/// Deterministic test data source.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform(double lo, double hi) { return lo + (hi - lo) * (static_cast<double>(engine_() >> 11) * 0x1.0p-53); }
    int integer(int lo, int hi) { return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }

private:
    std::mt19937_64 engine_;
};

}  // namespace oracle
