#include "kgrank/error.hpp"
#include "kgrank/generators.hpp"
#include "kgrank/sweep.hpp"
#include "kgrank/topk.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numeric>

namespace kgrank {
namespace {

TopKSet make_set(std::vector<NodeId> members) {
    return {members.size(), std::move(members)};
}

TEST(TopKTest, tiesGoToSmallerId) {
    const std::vector<double> scores{3, 2, 2, 1};
    EXPECT_EQ(top_k(scores, 2).members, (std::vector<NodeId>{0, 1}));
}

TEST(TopKTest, largeKReturnsAllNodesOrdered) {
    const std::vector<double> scores{1, 5, 3};
    const auto t = top_k(scores, 10);
    EXPECT_EQ(t.k, 10u);
    EXPECT_EQ(t.members, (std::vector<NodeId>{1, 2, 0}));
}

TEST(TopKTest, allEqualScoresPickSmallestIds) {
    const std::vector<double> scores(6, 0.25);
    EXPECT_EQ(top_k(scores, 3).members, (std::vector<NodeId>{0, 1, 2}));
}

TEST(TopKTest, zeroKIsRejected) {
    const std::vector<double> scores{1, 2};
    EXPECT_THROW(top_k(scores, 0), ParameterError);
}

TEST(TopKTest, matchesFullSortOracle) {
    Rng rng(3);
    std::uniform_int_distribution<int> value(0, 5);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> scores(30);
        for (auto& s : scores) {
            s = value(rng);
        }
        std::vector<NodeId> order(30);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return scores[a] > scores[b]; });
        order.resize(7);
        EXPECT_EQ(top_k(scores, 7).members, order);
    }
}

TEST(OverlapTest, examples) {
    std::vector<NodeId> twenty(20);
    std::iota(twenty.begin(), twenty.end(), 0);
    EXPECT_EQ(overlap(make_set(twenty), make_set(twenty)), 20u);
    EXPECT_EQ(overlap(make_set({0, 1, 2, 3, 4}), make_set({5, 6, 7, 8, 9})), 0u);
    EXPECT_EQ(overlap(make_set({1, 2, 3}), make_set({3, 4, 5})), 1u);
}

TEST(OverlapTest, mismatchedKIsRejected) {
    EXPECT_THROW(overlap(make_set({1, 2}), make_set({1, 2, 3})), ParameterError);
}

TEST(OverlapTest, symmetricAndBounded) {
    Rng rng(8);
    constexpr std::size_t n = 15;
    constexpr std::size_t k = 10;
    std::uniform_real_distribution<double> u;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> a(n);
        std::vector<double> b(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = u(rng);
            b[i] = u(rng);
        }
        const auto ta = top_k(a, k);
        const auto tb = top_k(b, k);
        const auto o = overlap(ta, tb);
        EXPECT_EQ(o, overlap(tb, ta));
        EXPECT_GE(o, 2 * k - n);
        EXPECT_LE(o, k);
    }
}

SweepConfig small_config(Topology topology, Metric metric) {
    SweepConfig cfg;
    GenSpec spec;
    spec.topology = topology;
    spec.n = 120;
    spec.target_avg_degree = 6;
    spec.m_attach = 3;
    spec.k_ring = 6;
    spec.seed = 5;
    spec.lfr.max_degree = 20;
    spec.lfr.min_community = 10;
    spec.lfr.max_community = 40;
    cfg.generator = spec;
    cfg.metric = metric;
    cfg.k = 10;
    cfg.precisions = {0.6, 1.0};
    cfg.recalls = {1.0, 0.6};
    cfg.trials = 6;
    cfg.master_seed = 13;
    return cfg;
}

TEST(SweepTest, identityCellIsExact) {
    for (auto topology : {Topology::ER, Topology::BA, Topology::WS, Topology::LFR}) {
        for (auto metric : {Metric::Degree, Metric::Closeness, Metric::Betweenness, Metric::Eigenvector}) {
            const auto table = sweep(small_config(topology, metric));
            const auto& last = table.rows.back();
            ASSERT_EQ(last.precision, 1.0);
            ASSERT_EQ(last.recall, 1.0);
            EXPECT_EQ(last.mean_overlap, 10.0) << to_string(topology) << " " << to_string(metric);
            EXPECT_EQ(last.std_overlap, 0.0);
        }
    }
}

TEST(SweepTest, rowsSortedByPrecisionThenRecall) {
    const auto table = sweep(small_config(Topology::ER, Metric::Degree));
    ASSERT_EQ(table.rows.size(), 4u);
    EXPECT_EQ(table.rows[0].precision, 0.6);
    EXPECT_EQ(table.rows[0].recall, 0.6);
    EXPECT_EQ(table.rows[1].precision, 0.6);
    EXPECT_EQ(table.rows[1].recall, 1.0);
    EXPECT_EQ(table.rows[2].precision, 1.0);
    EXPECT_EQ(table.rows[2].recall, 0.6);
}

TEST(SweepTest, identicalAcrossWorkerCounts) {
    auto cfg = small_config(Topology::BA, Metric::Betweenness);
    cfg.markers.push_back({"Naive-FewRel", 0.609, 0.644});
    cfg.workers = 1;
    const auto one = sweep(cfg).to_csv();
    cfg.workers = 8;
    const auto eight = sweep(cfg).to_csv();
    EXPECT_EQ(one, eight);
    cfg.master_seed = 14;
    EXPECT_NE(sweep(cfg).to_csv(), one);
}

TEST(SweepTest, markerRowsFollowGrid) {
    auto cfg = small_config(Topology::BA, Metric::Degree);
    cfg.markers.push_back({"Naive-FewRel", 0.609, 0.644});
    cfg.markers.push_back({"Other", 0.5, 0.5});
    const auto table = sweep(cfg);
    ASSERT_EQ(table.rows.size(), 6u);
    EXPECT_EQ(table.rows[4].marker_name, "Naive-FewRel");
    EXPECT_EQ(table.rows[4].precision, 0.609);
    EXPECT_EQ(table.rows[4].recall, 0.644);
    EXPECT_EQ(table.rows[5].marker_name, "Other");
    EXPECT_NE(table.to_csv().find("\n0.609,0.644,"), std::string::npos);
}

TEST(SweepTest, csvLayout) {
    SweepTable table;
    table.k = 20;
    table.precisions = {0.6};
    table.recalls = {0.6};
    table.rows.push_back({0.6, 0.6, 17.25, 1.5, 4, ""});
    table.rows.push_back({0.609, 0.644, 18, 0, 4, "m"});
    EXPECT_EQ(table.to_csv(),
              "precision,recall,mean_overlap,std_overlap,trials,marker_name\n"
              "0.6,0.6,17.2500,1.5000,4,\n"
              "0.609,0.644,18.0000,0.0000,4,m\n");
    EXPECT_EQ(table.to_plot_csv(), "recall,0.6\n0.6,17.2500\n");
}

TEST(SweepTest, lowerQualityReducesOverlapOnBa) {
    SweepConfig cfg;
    GenSpec spec;
    spec.topology = Topology::BA;
    spec.n = 300;
    spec.m_attach = 4;
    spec.seed = 2;
    cfg.generator = spec;
    cfg.metric = Metric::Degree;
    cfg.k = 20;
    cfg.precisions = {0.3, 1.0};
    cfg.recalls = {0.3, 1.0};
    cfg.trials = 10;
    cfg.master_seed = 1;
    const auto table = sweep(cfg);
    EXPECT_LT(table.rows.front().mean_overlap, table.rows.back().mean_overlap);
}

TEST(SweepTest, inMemoryTruthNeedsNoSource) {
    SweepConfig cfg;
    cfg.metric = Metric::Degree;
    cfg.k = 2;
    cfg.precisions = {1.0};
    cfg.recalls = {1.0};
    cfg.trials = 3;
    const auto table = sweep(oracle::from_pairs(4, {{0, 1}, {0, 2}, {0, 3}}), cfg);
    EXPECT_EQ(table.rows.front().mean_overlap, 2.0);
    EXPECT_THROW(sweep(cfg), ParameterError);
}

TEST(SweepTest, rejectsBadConfig) {
    auto cfg = small_config(Topology::ER, Metric::Degree);
    cfg.k = 0;
    EXPECT_THROW(sweep(cfg), ParameterError);
    cfg = small_config(Topology::ER, Metric::Degree);
    cfg.precisions = {0.0};
    EXPECT_THROW(sweep(cfg), ParameterError);
    cfg = small_config(Topology::ER, Metric::Degree);
    cfg.trials = 0;
    EXPECT_THROW(sweep(cfg), ParameterError);
}

TEST(GridTest, parsesListsAndRanges) {
    EXPECT_EQ(parse_grid("0.5,0.7"), (std::vector<double>{0.5, 0.7}));
    EXPECT_EQ(parse_grid("0.1:0.3:0.1"), (std::vector<double>{0.1, 0.2, 0.3}));
    const auto grid = default_grid();
    ASSERT_EQ(grid.size(), 15u);
    EXPECT_EQ(grid.front(), 0.3);
    EXPECT_EQ(grid[1], 0.35);
    EXPECT_EQ(grid.back(), 1.0);
    EXPECT_THROW(parse_grid("0.1,abc"), ParameterError);
}

} // namespace
} // namespace kgrank
