#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kgrank {

using NodeId = std::uint32_t;

/// Undirected edge; canonical form has u < v.
struct Edge {
    NodeId u;
    NodeId v;

    auto operator<=>(const Edge&) const = default;
};

inline Edge canonical(NodeId a, NodeId b) noexcept { return a < b ? Edge{a, b} : Edge{b, a}; }

/**
 * Simple undirected unweighted graph over dense node ids with string labels.
 *
 * Adjacency lists are sorted and symmetric; there are no self-loops or
 * parallel edges. Immutable after construction, so a Graph may be shared
 * read-only between threads.
 */
class Graph {
public:
    Graph() = default;

    /// Builds a graph from labels and edges. Self-loops and duplicate edges
    /// are dropped. Throws ParameterError on out-of-range ids or duplicate
    /// labels.
    Graph(std::vector<std::string> labels, std::span<const Edge> edges);

    /// Unlabeled graph; node i is labeled by its decimal id.
    static Graph with_numeric_labels(std::size_t n, std::span<const Edge> edges);

    std::size_t node_count() const noexcept { return labels_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }

    std::span<const NodeId> neighbors(NodeId v) const noexcept {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }
    std::size_t degree(NodeId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
    bool has_edge(NodeId a, NodeId b) const noexcept;

    const std::string& label(NodeId v) const noexcept { return labels_[v]; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    /// All edges in canonical form, sorted by (u, v).
    std::vector<Edge> edges() const;

    /// Number of self-loops and duplicates dropped at construction.
    std::size_t dropped_self_loops() const noexcept { return dropped_self_loops_; }
    std::size_t dropped_duplicates() const noexcept { return dropped_duplicates_; }

    friend bool operator==(const Graph& a, const Graph& b) noexcept {
        return a.labels_ == b.labels_ && a.offsets_ == b.offsets_ && a.adjacency_ == b.adjacency_;
    }

private:
    std::vector<std::string> labels_;
    std::vector<std::size_t> offsets_{0};
    std::vector<NodeId> adjacency_;
    std::size_t edge_count_ = 0;
    std::size_t dropped_self_loops_ = 0;
    std::size_t dropped_duplicates_ = 0;
};

struct GraphStats {
    std::size_t n = 0;
    std::size_t m = 0;
    double avg_degree = 0.0;
    std::size_t component_count = 0;
};

/// Parses the edge-list format: one `<label> <label>` pair per line, `#`
/// comments and blank lines ignored. Labels get dense ids in order of first
/// appearance. Throws ParseError carrying the 1-based line number.
Graph from_edge_list(std::string_view text);

/// Writes the edge-list format: edges sorted by (min id, max id), one per
/// line, single space separator, trailing newline. Isolated nodes cannot be
/// represented and are omitted.
std::string to_edge_list(const Graph& g);

/// Component index per node, numbered in order of smallest contained id.
std::vector<std::size_t> connected_components(const Graph& g);

/// Subgraph induced by `nodes` (any order); nodes are renumbered in
/// ascending original id order and keep their labels.
Graph induced_subgraph(const Graph& g, std::vector<NodeId> nodes);

/// Largest connected component; equal sizes resolve to the component with
/// the smallest node id.
Graph largest_connected_component(const Graph& g);

GraphStats basic_stats(const Graph& g);

} // namespace kgrank
