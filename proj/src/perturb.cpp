#include "kgrank/perturb.hpp"

#include "kgrank/error.hpp"
#include "kgrank/seed.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace kgrank {

void ErrorModel::validate() const {
    if (!(precision > 0.0 && precision <= 1.0)) {
        throw ParameterError(fmt::format("precision must lie in (0, 1], got {}", precision));
    }
    if (!(recall >= 0.0 && recall <= 1.0)) {
        throw ParameterError(fmt::format("recall must lie in [0, 1], got {}", recall));
    }
}

double PerturbResult::realized_precision() const {
    const std::size_t total = kept + added;
    return total == 0 ? 1.0 : static_cast<double>(kept) / static_cast<double>(total);
}

double PerturbResult::realized_recall(std::size_t truth_edges) const {
    return truth_edges == 0 ? 1.0 : static_cast<double>(kept) / static_cast<double>(truth_edges);
}

std::size_t kept_edge_count(double recall, std::size_t m) {
    // The epsilon absorbs representation error such as 0.29 * 100 = 28.999...
    const double exact = recall * static_cast<double>(m);
    return std::min(m, static_cast<std::size_t>(std::floor(exact + 1e-9)));
}

double false_edge_probability(double precision, double recall, std::size_t m, std::size_t n) {
    if (n < 2) {
        return 0.0;
    }
    const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    return (1.0 - precision) / precision * static_cast<double>(m) * recall / pairs;
}

PerturbResult perturb(const Graph& truth, const ErrorModel& model) {
    model.validate();
    const std::size_t n = truth.node_count();
    const std::size_t m = truth.edge_count();

    PerturbResult result;
    Rng rng(model.seed);

    const auto truth_edges = truth.edges();
    std::vector<Edge> edges;
    result.kept = kept_edge_count(model.recall, m);
    edges.reserve(result.kept);
    std::sample(truth_edges.begin(), truth_edges.end(), std::back_inserter(edges), result.kept, rng);

    result.raw_probability = false_edge_probability(model.precision, model.recall, m, n);
    result.probability = result.raw_probability;
    if (result.probability > 1.0) {
        result.probability = 1.0;
        result.clamped = true;
        result.warnings.push_back(fmt::format(
            "false-edge probability {:.6f} exceeds 1 at precision={} recall={}; clamped to 1", result.raw_probability,
            model.precision, model.recall));
    }

    // Walk the upper triangle in row-major order, jumping between successes
    // with geometric gaps. Pairs that are edges of the truth are skipped.
    const double q = result.probability;
    if (q > 0.0 && n >= 2) {
        std::geometric_distribution<std::uint64_t> gap(q);
        const bool every_pair = q >= 1.0;
        NodeId u = 0;
        NodeId v = 0;  // last visited column in row u; v == u means none yet
        auto advance = [&](std::uint64_t steps) {
            // Moves `steps` pairs forward; returns false past the last pair.
            while (steps > 0) {
                const std::uint64_t left_in_row = n - 1 - v;
                if (steps <= left_in_row) {
                    v += static_cast<NodeId>(steps);
                    return true;
                }
                steps -= left_in_row;
                ++u;
                v = u;
                if (u + 1 >= n) {
                    return false;
                }
            }
            return true;
        };
        while (advance(every_pair ? 1 : gap(rng) + 1)) {
            if (!truth.has_edge(u, v)) {
                edges.push_back({u, v});
                ++result.added;
            }
        }
    }

    result.graph = Graph(truth.labels(), edges);
    return result;
}

} // namespace kgrank
