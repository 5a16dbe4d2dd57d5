#pragma once

#include "kgrank/centrality.hpp"
#include "kgrank/graph.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace kgrank {

/// The k highest-scoring nodes, ordered by (score desc, node id asc).
struct TopKSet {
    std::size_t k = 0;
    std::vector<NodeId> members;  // size min(k, n)
};

/// Throws ParameterError when k == 0.
TopKSet top_k(std::span<const double> scores, std::size_t k);
inline TopKSet top_k(const ScoreVector& s, std::size_t k) { return top_k(s.scores, k); }

/// |a ∩ b|. Throws ParameterError when the two sets were built for different k.
std::size_t overlap(const TopKSet& a, const TopKSet& b);

} // namespace kgrank
