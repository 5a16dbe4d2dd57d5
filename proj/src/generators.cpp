#include "kgrank/generators.hpp"

#include "kgrank/error.hpp"
#include "kgrank/seed.hpp"

#include <algorithm>
#include <cctype>
#include <fmt/format.h>
#include <unordered_set>

namespace kgrank {

std::string to_string(Topology t) {
    switch (t) {
    case Topology::ER: return "er";
    case Topology::BA: return "ba";
    case Topology::WS: return "ws";
    case Topology::LFR: return "lfr";
    }
    return "?";
}

Topology parse_topology(const std::string& name) {
    std::string lower;
    for (char c : name) {
        lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    if (lower == "er") return Topology::ER;
    if (lower == "ba") return Topology::BA;
    if (lower == "ws") return Topology::WS;
    if (lower == "lfr") return Topology::LFR;
    throw ParameterError("unknown topology '" + name + "' (expected er, ba, ws or lfr)");
}

void GenSpec::validate() const {
    if (n < 2) {
        throw ParameterError("n must be at least 2");
    }
    const double max_degree_possible = static_cast<double>(n - 1);
    switch (topology) {
    case Topology::ER:
        if (!(target_avg_degree > 0.0) || target_avg_degree > max_degree_possible) {
            throw ParameterError(fmt::format("average degree must lie in (0, {}]", n - 1));
        }
        break;
    case Topology::BA:
        if (m_attach < 1 || m_attach >= n) {
            throw ParameterError("m_attach must satisfy 1 <= m_attach < n");
        }
        break;
    case Topology::WS:
        if (k_ring == 0 || k_ring % 2 != 0 || k_ring >= n) {
            throw ParameterError("k_ring must be even, positive and smaller than n");
        }
        if (!(beta >= 0.0 && beta <= 1.0)) {
            throw ParameterError("beta must lie in [0, 1]");
        }
        break;
    case Topology::LFR:
        if (!(target_avg_degree > 0.0) || target_avg_degree > max_degree_possible) {
            throw ParameterError(fmt::format("average degree must lie in (0, {}]", n - 1));
        }
        if (!(lfr.mu > 0.0 && lfr.mu < 1.0)) {
            throw ParameterError("mu must lie in (0, 1)");
        }
        if (!(lfr.tau1 > 1.0) || !(lfr.tau2 > 1.0)) {
            throw ParameterError("tau1 and tau2 must exceed 1");
        }
        if (lfr.max_degree < 1 || lfr.max_degree >= n) {
            throw ParameterError("max_degree must satisfy 1 <= max_degree < n");
        }
        if (static_cast<double>(lfr.max_degree) < target_avg_degree) {
            throw ParameterError("max_degree is below the target average degree");
        }
        if (lfr.min_community < 2 || lfr.min_community > lfr.max_community || lfr.max_community > n) {
            throw ParameterError("community size bounds must satisfy 2 <= min <= max <= n");
        }
        break;
    }
}

Graph gen_er(std::size_t n, double target_avg_degree, std::uint64_t seed) {
    GenSpec spec;
    spec.topology = Topology::ER;
    spec.n = n;
    spec.target_avg_degree = target_avg_degree;
    spec.validate();

    const double p = target_avg_degree / static_cast<double>(n - 1);
    Rng rng(seed);
    std::bernoulli_distribution coin(std::min(p, 1.0));
    std::vector<Edge> edges;
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) {
            if (coin(rng)) {
                edges.push_back({u, v});
            }
        }
    }
    return Graph::with_numeric_labels(n, edges);
}

Graph gen_ba(std::size_t n, std::size_t m_attach, std::uint64_t seed) {
    GenSpec spec;
    spec.topology = Topology::BA;
    spec.n = n;
    spec.m_attach = m_attach;
    spec.validate();

    Rng rng(seed);
    std::vector<Edge> edges;
    // Every edge contributes both endpoints, so a uniform pick from this list
    // is a degree-proportional pick over nodes.
    std::vector<NodeId> endpoints;
    for (NodeId u = 0; u < m_attach; ++u) {
        for (NodeId v = u + 1; v < m_attach; ++v) {
            edges.push_back({u, v});
            endpoints.push_back(u);
            endpoints.push_back(v);
        }
    }

    std::vector<NodeId> targets;
    for (auto v = static_cast<NodeId>(m_attach); v < n; ++v) {
        targets.clear();
        while (targets.size() < m_attach) {
            NodeId t;
            if (endpoints.empty()) {
                // Single-node seed clique has no degree mass yet.
                t = std::uniform_int_distribution<NodeId>(0, v - 1)(rng);
            } else {
                t = endpoints[std::uniform_int_distribution<std::size_t>(0, endpoints.size() - 1)(rng)];
            }
            if (std::find(targets.begin(), targets.end(), t) == targets.end()) {
                targets.push_back(t);
            }
        }
        for (NodeId t : targets) {
            edges.push_back({t, v});
            endpoints.push_back(t);
            endpoints.push_back(v);
        }
    }
    return Graph::with_numeric_labels(n, edges);
}

Graph gen_ws(std::size_t n, std::size_t k_ring, double beta, std::uint64_t seed) {
    GenSpec spec;
    spec.topology = Topology::WS;
    spec.n = n;
    spec.k_ring = k_ring;
    spec.beta = beta;
    spec.validate();

    std::vector<std::unordered_set<NodeId>> adj(n);
    auto link = [&](NodeId a, NodeId b) {
        adj[a].insert(b);
        adj[b].insert(a);
    };
    for (NodeId u = 0; u < n; ++u) {
        for (std::size_t j = 1; j <= k_ring / 2; ++j) {
            link(u, static_cast<NodeId>((u + j) % n));
        }
    }

    Rng rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
    for (std::size_t j = 1; j <= k_ring / 2; ++j) {
        for (NodeId u = 0; u < n; ++u) {
            const auto v = static_cast<NodeId>((u + j) % n);
            if (unit(rng) >= beta) {
                continue;
            }
            if (adj[u].size() >= n - 1 || !adj[u].contains(v)) {
                continue;
            }
            NodeId w = pick(rng);
            while (w == u || adj[u].contains(w)) {
                w = pick(rng);
            }
            adj[u].erase(v);
            adj[v].erase(u);
            link(u, w);
        }
    }

    std::vector<Edge> edges;
    edges.reserve(n * k_ring / 2);
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v : adj[u]) {
            if (u < v) {
                edges.push_back({u, v});
            }
        }
    }
    return Graph::with_numeric_labels(n, edges);
}

double mixing_fraction(const Graph& g, const std::vector<std::size_t>& community) {
    double total = 0.0;
    std::size_t counted = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const auto nb = g.neighbors(v);
        if (nb.empty()) {
            continue;
        }
        std::size_t external = 0;
        for (NodeId w : nb) {
            if (community[w] != community[v]) {
                ++external;
            }
        }
        total += static_cast<double>(external) / static_cast<double>(nb.size());
        ++counted;
    }
    return counted == 0 ? 0.0 : total / static_cast<double>(counted);
}

Generated generate(const GenSpec& spec) {
    spec.validate();
    Generated out;
    out.metadata["topology"] = to_string(spec.topology);
    out.metadata["seed"] = std::to_string(spec.seed);
    out.metadata["nodes"] = std::to_string(spec.n);
    switch (spec.topology) {
    case Topology::ER:
        out.graph = gen_er(spec.n, spec.target_avg_degree, spec.seed);
        out.metadata["target_avg_degree"] = fmt::format("{}", spec.target_avg_degree);
        break;
    case Topology::BA:
        out.graph = gen_ba(spec.n, spec.m_attach, spec.seed);
        out.metadata["m_attach"] = std::to_string(spec.m_attach);
        break;
    case Topology::WS:
        out.graph = gen_ws(spec.n, spec.k_ring, spec.beta, spec.seed);
        out.metadata["k_ring"] = std::to_string(spec.k_ring);
        out.metadata["beta"] = fmt::format("{}", spec.beta);
        break;
    case Topology::LFR: {
        auto lfr = gen_lfr(spec);
        out.graph = std::move(lfr.graph);
        out.community = std::move(lfr.community);
        out.metadata["target_avg_degree"] = fmt::format("{}", spec.target_avg_degree);
        out.metadata["mu"] = fmt::format("{}", spec.lfr.mu);
        out.metadata["realized_mu"] = fmt::format("{:.6f}", lfr.realized_mu);
        out.metadata["rewire_sweeps"] = std::to_string(lfr.rewire_sweeps);
        out.metadata["unresolved_stubs"] = std::to_string(lfr.unresolved_stubs);
        break;
    }
    }
    out.metadata["edges"] = std::to_string(out.graph.edge_count());
    out.metadata["realized_avg_degree"] = fmt::format("{:.6f}", basic_stats(out.graph).avg_degree);
    return out;
}

} // namespace kgrank
