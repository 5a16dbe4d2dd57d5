#include "kgrank/topk.hpp"

#include "kgrank/error.hpp"

#include <algorithm>
#include <numeric>

namespace kgrank {

TopKSet top_k(std::span<const double> scores, std::size_t k) {
    if (k == 0) {
        throw ParameterError("k must be at least 1");
    }
    std::vector<NodeId> ids(scores.size());
    std::iota(ids.begin(), ids.end(), NodeId{0});
    const std::size_t take = std::min(k, ids.size());
    std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(take), ids.end(),
                      [&](NodeId a, NodeId b) { return scores[a] != scores[b] ? scores[a] > scores[b] : a < b; });
    ids.resize(take);
    return {k, std::move(ids)};
}

std::size_t overlap(const TopKSet& a, const TopKSet& b) {
    if (a.k != b.k) {
        throw ParameterError("cannot compare top-k sets with different k (" + std::to_string(a.k) + " vs " +
                             std::to_string(b.k) + ")");
    }
    std::vector<NodeId> x = a.members;
    std::vector<NodeId> y = b.members;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    std::vector<NodeId> common;
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(common));
    return common.size();
}

} // namespace kgrank
