#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "oracles/oracles.hpp"
#include "suitescore/clustering.hpp"
#include "suitescore/ingest.hpp"
#include "test_helpers.hpp"

using namespace suitescore;

namespace {

StatsMatrix matrix_from(const Points& rows) {
    std::vector<BenchmarkId> names;
    std::vector<CounterId> counters;
    std::vector<double> values;
    for (std::size_t i = 0; i < rows.size(); ++i) names.push_back("w" + std::to_string(i));
    for (std::size_t j = 0; j < rows[0].size(); ++j) counters.push_back("c" + std::to_string(j));
    for (const auto& r : rows) values.insert(values.end(), r.begin(), r.end());
    return StatsMatrix(names, counters, values);
}

Points random_points(oracle::Rng& rng, int n, int m) {
    Points pts(n, std::vector<double>(m));
    for (auto& p : pts)
        for (auto& v : p) v = rng.uniform(0, 10);
    return pts;
}

/// Same partition up to a relabelling of the clusters.
bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
    std::map<int, int> ab, ba;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (ab.emplace(a[i], b[i]).first->second != b[i]) return false;
        if (ba.emplace(b[i], a[i]).first->second != a[i]) return false;
    }
    return true;
}

}  // namespace

TEST(Standardize, TwoValueColumn) {
    const auto z = standardize_columns(StatsMatrix({"a", "b"}, {"c"}, {2.0, 4.0}));
    EXPECT_NEAR(z.at(0, 0), -0.70710678118654752, 1e-15);
    EXPECT_NEAR(z.at(1, 0), 0.70710678118654752, 1e-15);
}

TEST(Standardize, ConstantColumnBecomesZero) {
    const auto z = standardize_columns(StatsMatrix({"a", "b", "c"}, {"x"}, {0.1, 0.1, 0.1}));
    for (std::size_t r = 0; r < 3; ++r) EXPECT_EQ(z.at(r, 0), 0.0);
}

TEST(Standardize, Idempotent) {
    oracle::Rng rng(3);
    const auto once = standardize_columns(matrix_from(random_points(rng, 7, 3)));
    const auto twice = standardize_columns(once);
    for (std::size_t i = 0; i < once.values().size(); ++i) EXPECT_NEAR(once.values()[i], twice.values()[i], 1e-12);
}

TEST(Standardize, NeedsTwoRows) {
    EXPECT_THROW(standardize_columns(StatsMatrix({"a"}, {"c"}, {1.0})), Error);
}

TEST(KMeans, TwoObviousGroupsMatchBruteForce) {
    const Points pts{{0, 0}, {0, 1}, {10, 10}, {10, 11}};
    const auto c = kmeans(pts, 2, RunConfig{});
    const auto [best, best_inertia] = oracle::best_partition(pts, 2);
    EXPECT_TRUE(same_partition(c.assignment, best));
    EXPECT_EQ(c.assignment[0], c.assignment[1]);
    EXPECT_NE(c.assignment[0], c.assignment[2]);
    EXPECT_NEAR(c.inertia, best_inertia, 1e-12);
    EXPECT_NEAR(c.inertia, 1.0, 1e-12);
}

TEST(KMeans, KEqualsNGivesSingletons) {
    const Points pts{{1, 2}, {3, 1}, {0, 0}, {5, 5}};
    const auto c = kmeans(pts, 4, RunConfig{});
    EXPECT_EQ(std::set<int>(c.assignment.begin(), c.assignment.end()).size(), 4u);
    EXPECT_EQ(c.inertia, 0.0);
}

TEST(KMeans, IdenticalPointsRepairEmptyCluster) {
    const Points pts{{2, 2}, {2, 2}, {2, 2}};
    const auto c = kmeans(pts, 2, RunConfig{});
    EXPECT_EQ(std::set<int>(c.assignment.begin(), c.assignment.end()).size(), 2u);
    EXPECT_EQ(c.inertia, 0.0);
}

TEST(KMeans, RejectsBadK) {
    const Points pts{{0}, {1}};
    EXPECT_THROW(kmeans(pts, 3, RunConfig{}), Error);
    EXPECT_THROW(kmeans(pts, 0, RunConfig{}), Error);
}

TEST(KMeans, InertiaNonIncreasingAndConsistent) {
    oracle::Rng rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = rng.integer(3, 25);
        const auto pts = random_points(rng, n, rng.integer(1, 4));
        const int k = rng.integer(1, n);
        std::vector<double> trace;
        const auto c = kmeans_single(pts, k, 1000 + trial, RunConfig{}, &trace);
        for (std::size_t i = 1; i < trace.size(); ++i) EXPECT_LE(trace[i], trace[i - 1] * (1 + 1e-12) + 1e-12);

        std::vector<int> count(k, 0);
        for (int a : c.assignment) ++count[a];
        for (int v : count) EXPECT_GT(v, 0);

        double recomputed = 0.0;
        for (int i = 0; i < n; ++i) recomputed += std::pow(euclidean_distance(pts[i], c.centroids[c.assignment[i]]), 2);
        EXPECT_NEAR(c.inertia, recomputed, 1e-9 * std::max(1.0, recomputed));
    }
}

TEST(KMeans, DeterministicForSeed) {
    oracle::Rng rng(5);
    const auto pts = random_points(rng, 15, 3);
    RunConfig cfg;
    cfg.seed = 99;
    const auto a = kmeans(pts, 4, cfg);
    const auto b = kmeans(pts, 4, cfg);
    EXPECT_EQ(a.assignment, b.assignment);
    EXPECT_EQ(a.inertia, b.inertia);
    EXPECT_NE(restart_seed(1, 2, 0), restart_seed(1, 2, 1));
}

TEST(Silhouette, SingleClusterIsZero) {
    const Points pts{{0}, {1}, {5}};
    Clustering c;
    c.k = 1;
    c.assignment = {0, 0, 0};
    const auto s = silhouette(pts, c);
    for (double v : s.per_point) EXPECT_EQ(v, 0.0);
    EXPECT_EQ(s.suite_at_k, 0.0);
}

TEST(Silhouette, LineExample) {
    const Points pts{{0}, {1}, {10}, {11}};
    Clustering c;
    c.k = 2;
    c.assignment = {0, 0, 1, 1};
    const auto s = silhouette(pts, c);
    EXPECT_DOUBLE_EQ(s.intra[0], 1.0);
    EXPECT_DOUBLE_EQ(s.inter[0], 10.5);
    EXPECT_NEAR(s.per_point[0], (10.5 - 1.0) / 10.5, 1e-15);
    EXPECT_NEAR(s.per_point[0], 0.904762, 1e-6);
}

TEST(Silhouette, SingletonPointScoresZero) {
    const Points pts{{0}, {1}, {10}};
    Clustering c;
    c.k = 2;
    c.assignment = {0, 0, 1};
    const auto s = silhouette(pts, c);
    EXPECT_EQ(s.per_point[2], 0.0);
    EXPECT_EQ(s.per_cluster[1], 0.0);
}

TEST(Silhouette, MatchesBruteForceAndAggregates) {
    oracle::Rng rng(8);
    for (int trial = 0; trial < 80; ++trial) {
        const int n = rng.integer(3, 12);
        const auto pts = random_points(rng, n, rng.integer(1, 5));
        const int k = rng.integer(2, n - 1);
        const auto c = kmeans(pts, k, RunConfig{});
        const auto s = silhouette(pts, c);
        const auto o = oracle::silhouette(pts, c.assignment, k);
        for (int p = 0; p < n; ++p) {
            EXPECT_NEAR(s.per_point[p], o.per_point[p], 1e-9);
            EXPECT_GE(s.per_point[p], -1.0);
            EXPECT_LE(s.per_point[p], 1.0);
        }
        double suite = 0.0;
        for (int j = 0; j < k; ++j) {
            double sum = 0.0;
            int count = 0;
            for (int p = 0; p < n; ++p)
                if (c.assignment[p] == j) sum += s.per_point[p], ++count;
            EXPECT_NEAR(s.per_cluster[j], sum / count, 1e-15);
            EXPECT_NEAR(s.per_cluster[j], o.per_cluster[j], 1e-9);
            suite += s.per_cluster[j];
        }
        EXPECT_NEAR(s.suite_at_k, suite / k, 1e-15);
        EXPECT_NEAR(s.suite_at_k, o.suite, 1e-9);
    }
}

TEST(ClusterScore, IdenticalRowsScoreZero) {
    const auto m = matrix_from({{3, 4}, {3, 4}, {3, 4}, {3, 4}, {3, 4}});
    EXPECT_EQ(cluster_score(m, RunConfig{}).score, 0.0);
    RunConfig raw;
    raw.standardize_for_clustering = false;
    EXPECT_EQ(cluster_score(m, raw).score, 0.0);
}

TEST(ClusterScore, TwoTightPairsMatchBruteForce) {
    const Points pts{{0, 0}, {0, 1}, {10, 10}, {10, 11}};
    RunConfig raw;
    raw.standardize_for_clustering = false;
    const auto result = cluster_score(matrix_from(pts), raw);
    double expected = 0.0;
    for (int k = 2; k <= 3; ++k) {
        const auto [labels, _] = oracle::best_partition(pts, k);
        expected += oracle::silhouette(pts, labels, k).suite;
    }
    expected /= 2;
    EXPECT_NEAR(result.score, expected, 1e-12);
    // Frozen from tests/oracles/derive_expected.py.
    EXPECT_NEAR(result.score, 0.6192247636273186, 1e-12);
    EXPECT_NEAR(cluster_score(matrix_from(pts), RunConfig{}).score, 0.6193447552378768, 1e-12);
}

TEST(ClusterScore, ShippedFixtureGolden) {
    const auto ds = load_suite(SuiteLayout::from_root(testing_support::tiny_fixture()));
    const auto r = cluster_score(ds.stats, RunConfig{});
    // Brute-force optimum partitions + silhouette, from tests/oracles/derive_expected.py.
    EXPECT_NEAR(r.score, 0.17233336204252814, 1e-12);
    ASSERT_EQ(r.ks, (std::vector<int>{2, 3, 4}));
    EXPECT_NEAR(r.breakdowns[0].suite_at_k, 0.28800872240107867, 1e-12);
    EXPECT_NEAR(r.breakdowns[1].suite_at_k, 0.17527691654751179, 1e-12);
    EXPECT_NEAR(r.breakdowns[2].suite_at_k, 0.053714447178994013, 1e-12);
}

TEST(ClusterScore, SizeRules) {
    EXPECT_THROW(cluster_score(matrix_from({{1}, {2}}), RunConfig{}), Error);
    const auto three = cluster_score(matrix_from({{1}, {2}, {9}}), RunConfig{});
    EXPECT_EQ(three.ks, std::vector<int>{2});
    EXPECT_EQ(three.score, three.breakdowns[0].suite_at_k);
}

TEST(ClusterScore, RangeOnRandomMatrices) {
    oracle::Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const auto r = cluster_score(matrix_from(random_points(rng, rng.integer(3, 10), rng.integer(1, 4))), RunConfig{});
        EXPECT_GE(r.score, -1.0);
        EXPECT_LE(r.score, 1.0);
    }
}

TEST(ClusterScore, RowPermutationInvariant) {
    oracle::Rng rng(17);
    for (int trial = 0; trial < 15; ++trial) {
        auto pts = random_points(rng, rng.integer(4, 10), rng.integer(1, 4));
        const auto base = cluster_score(matrix_from(pts), RunConfig{});
        std::reverse(pts.begin(), pts.end());
        std::rotate(pts.begin(), pts.begin() + 1, pts.end());
        const auto permuted = cluster_score(matrix_from(pts), RunConfig{});
        EXPECT_NEAR(base.score, permuted.score, 1e-12);
    }
}

TEST(ClusterScore, AffineRescalingInvariantWhenStandardized) {
    oracle::Rng rng(19);
    for (int trial = 0; trial < 15; ++trial) {
        auto pts = random_points(rng, rng.integer(4, 10), 3);
        const auto base = cluster_score(matrix_from(pts), RunConfig{});
        const double scale[3] = {1000.0, 0.001, 7.5};
        const double shift[3] = {5.0, 0.0, 1e4};
        for (auto& p : pts)
            for (int j = 0; j < 3; ++j) p[j] = p[j] * scale[j] + shift[j];
        EXPECT_NEAR(base.score, cluster_score(matrix_from(pts), RunConfig{}).score, 1e-9);
    }
}

TEST(ClusterScore, IndependentOfThreadCount) {
    oracle::Rng rng(23);
    const auto m = matrix_from(random_points(rng, 12, 4));
    const auto one = cluster_score(m, RunConfig{}, 1);
    const auto many = cluster_score(m, RunConfig{}, 8);
    EXPECT_EQ(one.score, many.score);
    for (std::size_t i = 0; i < one.ks.size(); ++i) EXPECT_EQ(one.clusterings[i].assignment, many.clusterings[i].assignment);
}
