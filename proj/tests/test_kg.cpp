#include "kgrank/error.hpp"
#include "kgrank/kg.hpp"
#include "kgrank/topk.hpp"
#include "kgrank/sweep.hpp"

#include <gtest/gtest.h>

namespace kgrank {
namespace {

using ie::EntityTuple;
using ie::RelationTriple;

TEST(BuildGraphTest, triplesBecomeEdges) {
    const std::vector<RelationTriple> triples{{"A", "B", "spouse", "s1", 0.9}, {"B", "C", "member_of", "s2", 0.85}};
    const auto kg = build_graph({}, triples);
    EXPECT_EQ(kg.graph.node_count(), 3u);
    EXPECT_EQ(kg.graph.edge_count(), 2u);
    EXPECT_TRUE(kg.node_types[0].empty());
}

TEST(BuildGraphTest, duplicateTripleKeepsBothSentences) {
    const std::vector<RelationTriple> triples{{"A", "B", "spouse", "s1", 0.9}, {"B", "A", "spouse", "s7", 0.95}};
    const auto kg = build_graph({}, triples);
    EXPECT_EQ(kg.graph.edge_count(), 1u);
    const auto& prov = kg.edge_relations.at(canonical(0, 1));
    EXPECT_EQ(prov.size(), 2u);
    EXPECT_TRUE(prov.count({"spouse", "s1"}));
    EXPECT_TRUE(prov.count({"spouse", "s7"}));
}

TEST(BuildGraphTest, entityWithoutRelationsIsIsolated) {
    const std::vector<EntityTuple> entities{{"m1", "s1", "A", "Politician"}};
    const auto kg = build_graph(entities, {});
    EXPECT_EQ(kg.graph.node_count(), 1u);
    EXPECT_EQ(kg.graph.edge_count(), 0u);
    EXPECT_EQ(kg.node_types[0], (std::set<std::string>{"Politician"}));
}

TEST(BuildGraphTest, selfRelationIsDroppedWithWarning) {
    const std::vector<RelationTriple> triples{{"A", "A", "spouse", "s1", 0.9}, {"A", "B", "spouse", "s2", 0.9}};
    const auto kg = build_graph({}, triples);
    EXPECT_EQ(kg.graph.edge_count(), 1u);
    EXPECT_EQ(kg.warnings.size(), 1u);
}

TEST(BuildGraphTest, mergesByExactLabel) {
    const std::vector<EntityTuple> entities{{"m1", "s1", "Ann", "Politician"},
                                            {"m2", "s2", "Ann", "Scholar"},
                                            {"m3", "s3", "ann", "Scholar"}};
    const auto kg = build_graph(entities, {});
    EXPECT_EQ(kg.graph.node_count(), 2u);
    EXPECT_EQ(kg.node_types[0].size(), 2u);
}

TEST(BuildGraphTest, idempotentUnderDuplication) {
    const std::vector<EntityTuple> entities{{"m1", "s1", "A", "Politician"}, {"m2", "s2", "D", "Scholar"}};
    const std::vector<RelationTriple> triples{
        {"A", "B", "spouse", "s1", 0.9}, {"B", "C", "member_of", "s2", 0.85}, {"C", "A", "member_of", "s3", 0.8}};
    auto entities2 = entities;
    entities2.insert(entities2.end(), entities.begin(), entities.end());
    auto triples2 = triples;
    triples2.insert(triples2.end(), triples.begin(), triples.end());
    EXPECT_EQ(build_graph(entities, triples), build_graph(entities2, triples2));
}

TEST(BuildGraphTest, attributesCsv) {
    const std::vector<RelationTriple> triples{{"A", "B", "spouse", "s1", 0.9}, {"A", "B", "member_of", "s1", 0.85}};
    EXPECT_EQ(build_graph({}, triples).attributes_csv(),
              "a,b,relation,sentence_id\nA,B,member_of,s1\nA,B,spouse,s1\n");
}

TEST(RankEntitiesTest, starHubByDegree) {
    const std::vector<RelationTriple> triples{
        {"hub", "x", "r", "s", 0.9}, {"hub", "y", "r", "s", 0.9}, {"hub", "z", "r", "s", 0.9}};
    const auto ranked = rank_entities(build_graph({}, triples), Metric::Degree, 1);
    ASSERT_EQ(ranked.size(), 1u);
    EXPECT_EQ(ranked[0].label, "hub");
    EXPECT_EQ(ranked[0].score, 3.0);
}

TEST(RankEntitiesTest, pathCenterByBetweenness) {
    const std::vector<RelationTriple> triples{{"A", "B", "r", "s", 0.9}, {"B", "C", "r", "s", 0.9}};
    const auto ranked = rank_entities(build_graph({}, triples), Metric::Betweenness, 1);
    ASSERT_EQ(ranked.size(), 1u);
    EXPECT_EQ(ranked[0].label, "B");
    EXPECT_EQ(ranked[0].score, 1.0);
}

TEST(RankEntitiesTest, largeKReturnsAllInTopKOrder) {
    const std::vector<RelationTriple> triples{
        {"A", "B", "r", "s", 0.9}, {"B", "C", "r", "s", 0.9}, {"C", "D", "r", "s", 0.9}, {"B", "D", "r", "s", 0.9}};
    const auto kg = build_graph({}, triples);
    const auto ranked = rank_entities(kg, Metric::Closeness, 10);
    ASSERT_EQ(ranked.size(), 4u);
    const auto order = top_k(ranking_scores(kg.graph, Metric::Closeness), 10).members;
    for (std::size_t i = 0; i < order.size(); ++i) {
        EXPECT_EQ(ranked[i].label, kg.graph.label(order[i]));
    }
    EXPECT_EQ(ranking_csv(ranked).substr(0, 19), "rank,label,score\n1,");
}

TEST(RankEntitiesTest, emptyGraphAndBadK) {
    EXPECT_TRUE(rank_entities(KnowledgeGraph{}, Metric::Degree, 3).empty());
    EXPECT_THROW(rank_entities(KnowledgeGraph{}, Metric::Degree, 0), ParameterError);
}

} // namespace
} // namespace kgrank
