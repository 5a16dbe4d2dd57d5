#include "kgrank/centrality.hpp"

#include "kgrank/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kgrank {

std::string to_string(Metric m) {
    switch (m) {
    case Metric::Degree: return "degree";
    case Metric::Closeness: return "closeness";
    case Metric::Betweenness: return "betweenness";
    case Metric::Eigenvector: return "eigenvector";
    }
    return "?";
}

Metric parse_metric(const std::string& name) {
    if (name == "degree") return Metric::Degree;
    if (name == "closeness") return Metric::Closeness;
    if (name == "betweenness") return Metric::Betweenness;
    if (name == "eigenvector") return Metric::Eigenvector;
    throw ParameterError("unknown metric '" + name + "' (expected degree, closeness, betweenness or eigenvector)");
}

ScoreVector degree_centrality(const Graph& g) {
    ScoreVector out{Metric::Degree, std::vector<double>(g.node_count())};
    for (NodeId v = 0; v < g.node_count(); ++v) {
        out.scores[v] = static_cast<double>(g.degree(v));
    }
    return out;
}

ScoreVector closeness_centrality(const Graph& g) {
    const std::size_t n = g.node_count();
    ScoreVector out{Metric::Closeness, std::vector<double>(n, 0.0)};
    if (n < 2) {
        return out;
    }
    constexpr auto unseen = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> dist(n, unseen);
    std::vector<NodeId> queue(n);
    for (NodeId s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), unseen);
        dist[s] = 0;
        std::size_t head = 0;
        std::size_t tail = 0;
        queue[tail++] = s;
        std::size_t total = 0;
        while (head < tail) {
            const NodeId v = queue[head++];
            total += dist[v];
            for (NodeId w : g.neighbors(v)) {
                if (dist[w] == unseen) {
                    dist[w] = dist[v] + 1;
                    queue[tail++] = w;
                }
            }
        }
        const double reached = static_cast<double>(tail - 1);
        if (total > 0) {
            out.scores[s] = (reached / static_cast<double>(n - 1)) * (reached / static_cast<double>(total));
        }
    }
    return out;
}

ScoreVector betweenness_centrality(const Graph& g) {
    const std::size_t n = g.node_count();
    ScoreVector out{Metric::Betweenness, std::vector<double>(n, 0.0)};
    std::vector<double> sigma(n);
    std::vector<double> delta(n);
    std::vector<std::ptrdiff_t> dist(n);
    std::vector<NodeId> order(n);
    for (NodeId s = 0; s < n; ++s) {
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        std::fill(dist.begin(), dist.end(), -1);
        sigma[s] = 1.0;
        dist[s] = 0;
        std::size_t head = 0;
        std::size_t tail = 0;
        order[tail++] = s;
        while (head < tail) {
            const NodeId v = order[head++];
            for (NodeId w : g.neighbors(v)) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    order[tail++] = w;
                }
                if (dist[w] == dist[v] + 1) {
                    sigma[w] += sigma[v];
                }
            }
        }
        // BFS order reversed is non-increasing distance; predecessors are the
        // neighbours one level closer to s.
        for (std::size_t i = tail; i-- > 1;) {
            const NodeId w = order[i];
            const double coeff = (1.0 + delta[w]) / sigma[w];
            for (NodeId v : g.neighbors(w)) {
                if (dist[v] == dist[w] - 1) {
                    delta[v] += sigma[v] * coeff;
                }
            }
            out.scores[w] += delta[w];
        }
    }
    // Every unordered pair was seen from both endpoints.
    for (auto& x : out.scores) {
        x /= 2.0;
    }
    return out;
}

ScoreVector eigenvector_centrality(const Graph& g, PowerIterationOptions options) {
    const std::size_t n = g.node_count();
    if (g.edge_count() == 0) {
        throw ParameterError("eigenvector centrality needs at least one edge");
    }
    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> next(n);
    double residual = std::numeric_limits<double>::infinity();
    for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
        double norm2 = 0.0;
        for (NodeId v = 0; v < n; ++v) {
            double acc = x[v];
            for (NodeId w : g.neighbors(v)) {
                acc += x[w];
            }
            next[v] = acc;
            norm2 += acc * acc;
        }
        const double inv = 1.0 / std::sqrt(norm2);
        residual = 0.0;
        for (NodeId v = 0; v < n; ++v) {
            next[v] *= inv;
            residual = std::max(residual, std::abs(next[v] - x[v]));
        }
        x.swap(next);
        if (residual < options.tolerance) {
            return {Metric::Eigenvector, std::move(x)};
        }
    }
    throw ConvergenceError("power iteration did not converge within " + std::to_string(options.max_iterations) +
                               " iterations",
                           std::move(x), residual);
}

ScoreVector compute_centrality(const Graph& g, Metric metric) {
    switch (metric) {
    case Metric::Degree: return degree_centrality(g);
    case Metric::Closeness: return closeness_centrality(g);
    case Metric::Betweenness: return betweenness_centrality(g);
    case Metric::Eigenvector: return eigenvector_centrality(g);
    }
    throw ParameterError("unknown metric");
}

} // namespace kgrank
