#pragma once

#include "kgrank/graph.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace kgrank {

/// Relation-extraction quality used to simulate a learned graph.
struct ErrorModel {
    double precision = 1.0;  // (0, 1]
    double recall = 1.0;     // [0, 1]
    std::uint64_t seed = 0;

    void validate() const;
};

struct PerturbResult {
    Graph graph;
    std::size_t kept = 0;          // true edges retained
    std::size_t added = 0;         // false edges introduced
    double raw_probability = 0.0;  // false-edge probability before clamping
    double probability = 0.0;      // applied false-edge probability
    bool clamped = false;
    std::vector<std::string> warnings;

    /// kept / (kept + added); 1 when the learned graph has no edges.
    double realized_precision() const;
    /// kept / |E| of the ground truth; 1 when the ground truth has no edges.
    double realized_recall(std::size_t truth_edges) const;
};

/// Number of true edges retained: floor(recall * m).
std::size_t kept_edge_count(double recall, std::size_t m);

/// False-edge probability (1 - p) / p * m * r / C(n, 2), before clamping.
double false_edge_probability(double precision, double recall, std::size_t m, std::size_t n);

/// Simulates the graph learned from text. Keeps floor(recall * |E|) edges of
/// `truth` chosen uniformly without replacement, then adds each pair that is
/// not an edge of `truth` independently with the false-edge probability
/// (clamped to 1, with a warning). The node set and labels are unchanged.
PerturbResult perturb(const Graph& truth, const ErrorModel& model);

} // namespace kgrank
