#include "kgrank/kg.hpp"

#include "kgrank/csv.hpp"
#include "kgrank/error.hpp"
#include "kgrank/sweep.hpp"
#include "kgrank/topk.hpp"

#include <fmt/format.h>
#include <unordered_map>

namespace kgrank {

KnowledgeGraph build_graph(std::span<const ie::EntityTuple> entities, std::span<const ie::RelationTriple> triples) {
    std::vector<std::string> labels;
    std::unordered_map<std::string, NodeId> ids;
    std::vector<std::set<std::string>> types;
    auto id_of = [&](const std::string& label) {
        auto [it, inserted] = ids.try_emplace(label, static_cast<NodeId>(labels.size()));
        if (inserted) {
            labels.push_back(label);
            types.emplace_back();
        }
        return it->second;
    };

    KnowledgeGraph kg;
    for (const auto& e : entities) {
        if (e.mention_text.empty()) {
            kg.warnings.push_back("entity '" + e.mention_id + "' has an empty label; skipped");
            continue;
        }
        types[id_of(e.mention_text)].insert(e.fine_type);
    }

    std::vector<Edge> edges;
    for (const auto& t : triples) {
        if (t.a.empty() || t.b.empty()) {
            kg.warnings.push_back("triple in sentence '" + t.sentence_id + "' has an empty endpoint; skipped");
            continue;
        }
        if (t.a == t.b) {
            kg.warnings.push_back(
                fmt::format("self-relation ({}, {}, {}) in sentence '{}' dropped", t.a, t.relation, t.b, t.sentence_id));
            continue;
        }
        const NodeId a = id_of(t.a);
        const NodeId b = id_of(t.b);
        const auto e = canonical(a, b);
        edges.push_back(e);
        kg.edge_relations[e].emplace(t.relation, t.sentence_id);
    }

    kg.graph = Graph(std::move(labels), edges);
    kg.node_types = std::move(types);
    return kg;
}

std::string KnowledgeGraph::attributes_csv() const {
    std::string out = "a,b,relation,sentence_id\n";
    for (const auto& [edge, rels] : edge_relations) {
        for (const auto& [relation, sentence] : rels) {
            out += csv::join_row({graph.label(edge.u), graph.label(edge.v), relation, sentence});
        }
    }
    return out;
}

std::vector<RankedEntity> rank_entities(const KnowledgeGraph& kg, Metric metric, std::size_t k) {
    if (k == 0) {
        throw ParameterError("k must be at least 1");
    }
    if (kg.graph.node_count() == 0) {
        return {};
    }
    const auto scores = ranking_scores(kg.graph, metric);
    std::vector<RankedEntity> out;
    for (NodeId v : top_k(scores, k).members) {
        out.push_back({kg.graph.label(v), scores.scores[v]});
    }
    return out;
}

std::string ranking_csv(const std::vector<RankedEntity>& ranking) {
    std::string out = "rank,label,score\n";
    for (std::size_t i = 0; i < ranking.size(); ++i) {
        out += fmt::format("{},{},{:.10g}\n", i + 1, csv::escape(ranking[i].label), ranking[i].score);
    }
    return out;
}

} // namespace kgrank
