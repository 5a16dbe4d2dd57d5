#pragma once

#include "kgrank/centrality.hpp"
#include "kgrank/graph.hpp"
#include "kgrank/ie.hpp"

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace kgrank {

/// Entity graph: one node per distinct entity label, one undirected edge per
/// entity pair with at least one relation. Relation types and their source
/// sentences are kept as edge attributes; centrality sees only the simple
/// skeleton.
struct KnowledgeGraph {
    Graph graph;
    std::vector<std::set<std::string>> node_types;  // fine types per node id
    /// (u, v) with u < v -> {(relation, sentence_id)}
    std::map<Edge, std::set<std::pair<std::string, std::string>>> edge_relations;
    std::vector<std::string> warnings;

    friend bool operator==(const KnowledgeGraph& a, const KnowledgeGraph& b) {
        return a.graph == b.graph && a.node_types == b.node_types && a.edge_relations == b.edge_relations;
    }

    /// `a,b,relation,sentence_id`, one row per provenance entry.
    std::string attributes_csv() const;
};

/// Entities are merged by exact label match (mention text). Nodes are created
/// in order of first appearance: entity tuples first, then triple endpoints.
/// Triples whose endpoints coincide are dropped with a warning.
KnowledgeGraph build_graph(std::span<const ie::EntityTuple> entities, std::span<const ie::RelationTriple> triples);

struct RankedEntity {
    std::string label;
    double score = 0.0;
};

/// Top-k entities by the given centrality, in top-k order. Empty graph gives
/// an empty list.
std::vector<RankedEntity> rank_entities(const KnowledgeGraph& kg, Metric metric, std::size_t k);

/// `rank,label,score`
std::string ranking_csv(const std::vector<RankedEntity>& ranking);

} // namespace kgrank
