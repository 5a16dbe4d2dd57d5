#pragma once

#include "kgrank/graph.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace kgrank {

enum class Metric { Degree, Closeness, Betweenness, Eigenvector };

std::string to_string(Metric m);
/// Accepts degree/closeness/betweenness/eigenvector; throws ParameterError otherwise.
Metric parse_metric(const std::string& name);

/// One finite, non-negative score per node id.
struct ScoreVector {
    Metric metric;
    std::vector<double> scores;
};

/// Raw degree.
ScoreVector degree_centrality(const Graph& g);

/// Wasserman-Faust closeness: ((r-1)/(n-1)) * ((r-1)/sum of distances), with r
/// the size of the node's reachable set including itself. Isolated nodes
/// score 0, so disconnected graphs are handled without infinities.
ScoreVector closeness_centrality(const Graph& g);

/// Unnormalized shortest-path betweenness, each unordered pair counted once,
/// endpoints excluded. Dependency accumulation from every source, O(n m).
ScoreVector betweenness_centrality(const Graph& g);

struct PowerIterationOptions {
    double tolerance = 1e-10;
    std::size_t max_iterations = 10000;
};

/// Dominant adjacency eigenvector with unit Euclidean norm.
///
/// Iterates on A + I from the uniform vector: the shift leaves eigenvectors
/// unchanged and removes the oscillation plain power iteration shows on
/// bipartite components. On a disconnected graph the limit is the projection
/// of the start vector onto the dominant eigenspace, so components whose
/// spectral radius is smaller decay to zero.
///
/// Throws ParameterError for graphs without edges and ConvergenceError if the
/// max-norm step does not drop below the tolerance in time.
ScoreVector eigenvector_centrality(const Graph& g, PowerIterationOptions options = {});

ScoreVector compute_centrality(const Graph& g, Metric metric);

} // namespace kgrank
