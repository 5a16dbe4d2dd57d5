#include "kgrank/error.hpp"
#include "kgrank/generators.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

namespace kgrank {
namespace {

void expect_simple(const Graph& g) {
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const auto nb = g.neighbors(v);
        EXPECT_TRUE(std::adjacent_find(nb.begin(), nb.end()) == nb.end());
        EXPECT_TRUE(std::find(nb.begin(), nb.end(), v) == nb.end());
    }
}

TEST(ErdosRenyiTest, completeWhenProbabilityIsOne) {
    const auto g = gen_er(2, 1.0, 3);
    EXPECT_EQ(g.node_count(), 2u);
    EXPECT_EQ(g.edge_count(), 1u);
}

TEST(ErdosRenyiTest, meanDegreeOverSeeds) {
    double total = 0.0;
    double edges = 0.0;
    double edges_sq = 0.0;
    constexpr int kSeeds = 100;
    for (int s = 0; s < kSeeds; ++s) {
        const auto g = gen_er(500, 12.0, static_cast<std::uint64_t>(s));
        expect_simple(g);
        total += 2.0 * static_cast<double>(g.edge_count()) / 500.0;
        edges += static_cast<double>(g.edge_count());
        edges_sq += static_cast<double>(g.edge_count()) * static_cast<double>(g.edge_count());
    }
    EXPECT_NEAR(total / kSeeds, 12.0, 0.3);
    const double mean = edges / kSeeds;
    const double var = (edges_sq - kSeeds * mean * mean) / (kSeeds - 1);
    EXPECT_LT(std::abs(mean - 3000.0), 3.0 * std::sqrt(var / kSeeds) + 1e-9);
}

TEST(ErdosRenyiTest, deterministicPerSeed) {
    EXPECT_EQ(gen_er(200, 8.0, 42), gen_er(200, 8.0, 42));
    EXPECT_NE(gen_er(200, 8.0, 42), gen_er(200, 8.0, 43));
}

TEST(BarabasiAlbertTest, smallTree) {
    const auto g = gen_ba(3, 1, 9);
    EXPECT_EQ(g.edge_count(), 2u);
    EXPECT_EQ(basic_stats(g).component_count, 1u);
}

TEST(BarabasiAlbertTest, exactEdgeCount) {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto g = gen_ba(500, 6, s);
        expect_simple(g);
        EXPECT_EQ(g.edge_count(), 2979u);
    }
}

TEST(BarabasiAlbertTest, heavyTail) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto g = gen_ba(500, 6, s);
        std::vector<std::size_t> deg;
        for (NodeId v = 0; v < g.node_count(); ++v) {
            deg.push_back(g.degree(v));
        }
        std::sort(deg.begin(), deg.end());
        const double median = (static_cast<double>(deg[249]) + static_cast<double>(deg[250])) / 2.0;
        EXPECT_GE(static_cast<double>(deg.back()), 5.0 * median) << "seed " << s;
    }
}

TEST(WattsStrogatzTest, zeroBetaIsRingLattice) {
    const auto g = gen_ws(30, 4, 0.0, 1);
    EXPECT_EQ(g.edge_count(), 60u);
    for (NodeId v = 0; v < 30; ++v) {
        EXPECT_TRUE(g.has_edge(v, (v + 1) % 30));
        EXPECT_TRUE(g.has_edge(v, (v + 2) % 30));
        EXPECT_FALSE(g.has_edge(v, (v + 3) % 30));
    }
}

TEST(WattsStrogatzTest, edgeCountIsPreserved) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto g = gen_ws(500, 12, 0.1, s);
        expect_simple(g);
        EXPECT_EQ(g.edge_count(), 3000u);
    }
    for (double beta : {0.0, 0.3, 0.7, 1.0}) {
        EXPECT_EQ(gen_ws(40, 6, beta, 5).edge_count(), 120u);
    }
}

TEST(WattsStrogatzTest, fullRewiringLowersClustering) {
    const double lattice = oracle::average_clustering(gen_ws(20, 4, 0.0, 0));
    EXPECT_NEAR(lattice, 0.5, 1e-12);
    double total = 0.0;
    for (std::uint64_t s = 0; s < 30; ++s) {
        total += oracle::average_clustering(gen_ws(20, 4, 1.0, s));
    }
    EXPECT_LT(total / 30.0, lattice);
}

GenSpec lfr_spec(std::uint64_t seed) {
    GenSpec spec;
    spec.topology = Topology::LFR;
    spec.n = 500;
    spec.target_avg_degree = 12.0;
    spec.seed = seed;
    return spec;
}

TEST(LfrTest, degreeAndMixingOverSeeds) {
    double degree = 0.0;
    double mixing = 0.0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto r = gen_lfr(lfr_spec(s));
        expect_simple(r.graph);
        EXPECT_EQ(r.graph.node_count(), 500u);
        degree += 2.0 * static_cast<double>(r.graph.edge_count()) / 500.0;
        const double mu = mixing_fraction(r.graph, r.community);
        EXPECT_NEAR(mu, r.realized_mu, 1e-12);
        mixing += mu;
    }
    EXPECT_NEAR(degree / 20.0, 12.0, 1.0);
    EXPECT_NEAR(mixing / 20.0, 0.1, 0.05);
}

TEST(LfrTest, communitySizesWithinBounds) {
    const auto r = gen_lfr(lfr_spec(4));
    std::map<std::size_t, std::size_t> sizes;
    for (auto c : r.community) {
        ++sizes[c];
    }
    for (const auto& [c, size] : sizes) {
        EXPECT_GE(size, 20u);
        EXPECT_LE(size, 100u);
    }
}

TEST(LfrTest, deterministicPerSeed) {
    const auto a = gen_lfr(lfr_spec(8));
    const auto b = gen_lfr(lfr_spec(8));
    EXPECT_EQ(a.graph, b.graph);
    EXPECT_EQ(a.community, b.community);
}

TEST(LfrTest, infeasibleCommunitiesFail) {
    auto spec = lfr_spec(1);
    spec.n = 30;
    spec.lfr.min_community = 40;
    spec.lfr.max_community = 50;
    EXPECT_THROW(generate(spec), Error);
}

TEST(GenSpecTest, rejectsBadParameters) {
    GenSpec spec;
    spec.topology = Topology::WS;
    spec.k_ring = 5;
    EXPECT_THROW(spec.validate(), ParameterError);
    spec.k_ring = 600;
    EXPECT_THROW(spec.validate(), ParameterError);
    spec = GenSpec{};
    spec.topology = Topology::BA;
    spec.m_attach = 0;
    EXPECT_THROW(spec.validate(), ParameterError);
    spec.m_attach = spec.n;
    EXPECT_THROW(spec.validate(), ParameterError);
    spec = GenSpec{};
    spec.target_avg_degree = 600;
    EXPECT_THROW(spec.validate(), ParameterError);
    EXPECT_THROW(parse_topology("grid"), ParameterError);
    EXPECT_EQ(parse_topology("LFR"), Topology::LFR);
}

TEST(GenerateTest, metadataDescribesRun) {
    GenSpec spec;
    spec.topology = Topology::WS;
    spec.seed = 17;
    const auto out = generate(spec);
    EXPECT_EQ(out.metadata.at("topology"), "ws");
    EXPECT_EQ(out.metadata.at("seed"), "17");
    EXPECT_EQ(out.metadata.at("edges"), "3000");
}

} // namespace
} // namespace kgrank
