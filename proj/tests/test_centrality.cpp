#include "kgrank/centrality.hpp"
#include "kgrank/error.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

namespace kgrank {
namespace {

void expect_scores(const std::vector<double>& actual, const std::vector<double>& expected, double tol) {
    ASSERT_EQ(actual.size(), expected.size());
    for (std::size_t i = 0; i < actual.size(); ++i) {
        EXPECT_NEAR(actual[i], expected[i], tol) << "node " << i;
    }
}

const Graph kStar = oracle::from_pairs(4, {{0, 1}, {0, 2}, {0, 3}});
const Graph kTriangle = oracle::from_pairs(3, {{0, 1}, {1, 2}, {0, 2}});
const Graph kPath3 = oracle::from_pairs(3, {{0, 1}, {1, 2}});
const Graph kCycle4 = oracle::from_pairs(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
const Graph kK4 = oracle::from_pairs(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});

TEST(DegreeTest, smallGraphs) {
    expect_scores(degree_centrality(kTriangle).scores, {2, 2, 2}, 0);
    expect_scores(degree_centrality(kStar).scores, {3, 1, 1, 1}, 0);
    expect_scores(degree_centrality(Graph::with_numeric_labels(5, {})).scores, {0, 0, 0, 0, 0}, 0);
}

TEST(ClosenessTest, smallGraphs) {
    expect_scores(closeness_centrality(kPath3).scores, {2.0 / 3.0, 1.0, 2.0 / 3.0}, 1e-12);
    expect_scores(closeness_centrality(kK4).scores, {1, 1, 1, 1}, 1e-12);
    const auto tri_iso = oracle::from_pairs(4, {{0, 1}, {1, 2}, {0, 2}});
    expect_scores(closeness_centrality(tri_iso).scores, {2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0, 0.0}, 1e-12);
}

TEST(BetweennessTest, smallGraphs) {
    expect_scores(betweenness_centrality(kStar).scores, {3, 0, 0, 0}, 1e-12);
    expect_scores(betweenness_centrality(kCycle4).scores, {0.5, 0.5, 0.5, 0.5}, 1e-12);
    expect_scores(betweenness_centrality(kK4).scores, {0, 0, 0, 0}, 1e-12);
}

TEST(EigenvectorTest, cycleIsUniform) {
    for (std::size_t n : {3u, 4u, 7u, 10u}) {
        std::vector<Edge> edges;
        for (NodeId v = 0; v < n; ++v) {
            edges.push_back({v, static_cast<NodeId>((v + 1) % n)});
        }
        const auto s = eigenvector_centrality(Graph::with_numeric_labels(n, edges)).scores;
        for (double x : s) {
            EXPECT_NEAR(x, 1.0 / std::sqrt(static_cast<double>(n)), 1e-9);
        }
    }
}

TEST(EigenvectorTest, starCenterToLeafRatio) {
    const auto s = eigenvector_centrality(kStar).scores;
    EXPECT_NEAR(s[0] / s[1], std::sqrt(3.0), 1e-8);
    expect_scores(s, oracle::eigenvector(kStar), 1e-8);
}

TEST(EigenvectorTest, disjointTrianglesMatchUniformProjection) {
    // Equal spectral radii: the uniform start has equal weight on both
    // components, so neither decays.
    const auto g = oracle::from_pairs(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    const auto s = eigenvector_centrality(g).scores;
    expect_scores(s, oracle::eigenvector(g), 1e-9);
    for (double x : s) {
        EXPECT_NEAR(x, 1.0 / std::sqrt(6.0), 1e-9);
    }
}

TEST(EigenvectorTest, smallerComponentDecays) {
    // K4 (radius 3) next to a triangle (radius 2).
    const auto g = oracle::from_pairs(
        7, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {4, 5}, {5, 6}, {4, 6}});
    const auto s = eigenvector_centrality(g).scores;
    for (NodeId v = 0; v < 4; ++v) {
        EXPECT_NEAR(s[v], 0.5, 1e-9);
    }
    for (NodeId v = 4; v < 7; ++v) {
        EXPECT_NEAR(s[v], 0.0, 1e-9);
    }
}

TEST(EigenvectorTest, bipartiteConverges) {
    const auto s = eigenvector_centrality(kCycle4).scores;
    expect_scores(s, {0.5, 0.5, 0.5, 0.5}, 1e-9);
}

TEST(EigenvectorTest, edgelessGraphIsRejected) {
    EXPECT_THROW(eigenvector_centrality(Graph::with_numeric_labels(3, {})), ParameterError);
}

TEST(EigenvectorTest, iterationCapRaisesConvergenceError) {
    const auto g = oracle::from_pairs(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    try {
        eigenvector_centrality(g, {1e-10, 2});
        FAIL() << "expected ConvergenceError";
    } catch (const ConvergenceError& e) {
        EXPECT_EQ(e.last_iterate().size(), 5u);
        EXPECT_GT(e.residual(), 1e-10);
    }
}

TEST(CentralityOracleTest, randomSmallGraphs) {
    Rng rng(2024);
    std::uniform_int_distribution<std::size_t> size(1, 8);
    std::uniform_real_distribution<double> density(0.1, 0.9);
    for (int trial = 0; trial < 200; ++trial) {
        const auto g = oracle::random_graph(size(rng), density(rng), rng);
        expect_scores(degree_centrality(g).scores, oracle::degree(g), 1e-9);
        expect_scores(closeness_centrality(g).scores, oracle::closeness(g), 1e-9);
        const auto bc = betweenness_centrality(g).scores;
        const auto bc_ref = oracle::betweenness(g);
        expect_scores(bc, bc_ref, 1e-9);
        EXPECT_NEAR(std::accumulate(bc.begin(), bc.end(), 0.0), std::accumulate(bc_ref.begin(), bc_ref.end(), 0.0),
                    1e-9);
        if (g.edge_count() > 0) {
            expect_scores(eigenvector_centrality(g).scores, oracle::eigenvector(g), 1e-6);
        }
    }
}

TEST(CentralityPropertyTest, permutationEquivariance) {
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = oracle::random_graph(12, 0.3, rng);
        std::vector<NodeId> perm(12);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<Edge> edges;
        for (const auto& e : g.edges()) {
            edges.push_back({perm[e.u], perm[e.v]});
        }
        const auto h = Graph::with_numeric_labels(12, edges);
        for (auto metric : {Metric::Degree, Metric::Closeness, Metric::Betweenness, Metric::Eigenvector}) {
            if (metric == Metric::Eigenvector && g.edge_count() == 0) {
                continue;
            }
            const auto a = compute_centrality(g, metric).scores;
            const auto b = compute_centrality(h, metric).scores;
            for (NodeId v = 0; v < 12; ++v) {
                EXPECT_NEAR(a[v], b[perm[v]], 1e-9) << to_string(metric);
            }
        }
    }
}

TEST(CentralityPropertyTest, isolatedNodeLeavesDegreeAndBetweennessUnchanged) {
    Rng rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = oracle::random_graph(10, 0.3, rng);
        const auto edges = g.edges();
        const auto h = Graph::with_numeric_labels(11, edges);
        const auto d = degree_centrality(h).scores;
        const auto b = betweenness_centrality(h).scores;
        EXPECT_EQ(d.back(), 0.0);
        EXPECT_EQ(b.back(), 0.0);
        expect_scores({d.begin(), d.end() - 1}, degree_centrality(g).scores, 0);
        expect_scores({b.begin(), b.end() - 1}, betweenness_centrality(g).scores, 1e-12);
    }
}

TEST(MetricTest, namesRoundTrip) {
    for (auto metric : {Metric::Degree, Metric::Closeness, Metric::Betweenness, Metric::Eigenvector}) {
        EXPECT_EQ(parse_metric(to_string(metric)), metric);
    }
    EXPECT_THROW(parse_metric("pagerank"), ParameterError);
}

} // namespace
} // namespace kgrank
