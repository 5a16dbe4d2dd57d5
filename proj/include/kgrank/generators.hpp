#pragma once

#include "kgrank/graph.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace kgrank {

enum class Topology { ER, BA, WS, LFR };

std::string to_string(Topology t);
/// Accepts er/ba/ws/lfr in any case; throws ParameterError otherwise.
Topology parse_topology(const std::string& name);

/// LFR benchmark parameters. Community sizes are drawn from a power law with
/// exponent `tau2` on [min_community, max_community].
struct LfrParams {
    double tau1 = 2.5;
    double tau2 = 1.5;
    double mu = 0.1;
    std::size_t max_degree = 50;
    std::size_t min_community = 20;
    std::size_t max_community = 100;
    std::size_t max_rewire_sweeps = 200;
    std::size_t max_retries = 20;
};

/// Everything needed to regenerate a synthetic ground-truth graph.
struct GenSpec {
    Topology topology = Topology::ER;
    std::size_t n = 500;
    double target_avg_degree = 12.0;
    std::uint64_t seed = 0;
    std::size_t m_attach = 6;   // BA
    std::size_t k_ring = 12;    // WS
    double beta = 0.1;          // WS
    LfrParams lfr;

    void validate() const;
};

/// Generator output plus metadata for the key=value sidecar.
struct Generated {
    Graph graph;
    std::vector<std::size_t> community;  // LFR only
    std::map<std::string, std::string> metadata;
};

/// G(n, p) with p = target_avg_degree / (n - 1).
Graph gen_er(std::size_t n, double target_avg_degree, std::uint64_t seed);

/// Preferential attachment from a seed clique on `m_attach` nodes. Produces
/// exactly C(m_attach, 2) + m_attach * (n - m_attach) edges.
Graph gen_ba(std::size_t n, std::size_t m_attach, std::uint64_t seed);

/// Ring lattice with `k_ring` nearest neighbours, each lattice edge rewired
/// with probability `beta`. Edge count is always n * k_ring / 2.
Graph gen_ws(std::size_t n, std::size_t k_ring, double beta, std::uint64_t seed);

struct LfrGraph {
    Graph graph;
    std::vector<std::size_t> community;
    double realized_mu = 0.0;       // mean over nodes of external/total degree
    double realized_avg_degree = 0.0;
    std::size_t rewire_sweeps = 0;
    std::size_t unresolved_stubs = 0;  // stub pairs dropped after the sweep cap
};

LfrGraph gen_lfr(const GenSpec& spec);

/// Dispatches on spec.topology after validation.
Generated generate(const GenSpec& spec);

/// Mean over non-isolated nodes of the fraction of a node's edges that leave
/// its community.
double mixing_fraction(const Graph& g, const std::vector<std::size_t>& community);

} // namespace kgrank
