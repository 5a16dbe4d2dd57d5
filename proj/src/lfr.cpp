// LFR benchmark generator: power-law degrees and community sizes, a fixed
// fraction of each node's stubs reserved for inter-community edges, then two
// configuration-model layers (intra and inter) repaired by degree-preserving
// edge swaps.

#include "kgrank/error.hpp"
#include "kgrank/generators.hpp"
#include "kgrank/seed.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <unordered_set>

namespace kgrank {
namespace {

struct Infeasible {
    std::string reason;
};

/// Continuous power law on [lo, hi) with exponent tau, sampled by inverse CDF.
class PowerLaw {
public:
    PowerLaw(double tau, double lo, double hi)
        : exp_(1.0 - tau), lo_pow_(std::pow(lo, 1.0 - tau)), hi_pow_(std::pow(hi, 1.0 - tau)) {}

    double cdf(double x) const { return (lo_pow_ - std::pow(x, exp_)) / (lo_pow_ - hi_pow_); }

    double sample(Rng& rng) const {
        const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        return std::pow(lo_pow_ - u * (lo_pow_ - hi_pow_), 1.0 / exp_);
    }

private:
    double exp_;
    double lo_pow_;
    double hi_pow_;
};

/// Mean of floor(X) for X ~ PowerLaw(tau, lo, max_degree + 1).
double floored_mean(double tau, double lo, std::size_t max_degree) {
    const double hi = static_cast<double>(max_degree) + 1.0;
    const PowerLaw law(tau, lo, hi);
    double mean = 0.0;
    for (auto k = static_cast<std::size_t>(std::floor(lo)); k <= max_degree; ++k) {
        const double a = std::max(static_cast<double>(k), lo);
        const double b = std::min(static_cast<double>(k + 1), hi);
        if (b > a) {
            mean += static_cast<double>(k) * (law.cdf(b) - law.cdf(a));
        }
    }
    return mean;
}

/// Lower cutoff of the degree law so the expected degree hits the target.
double solve_min_degree(double tau, double target, std::size_t max_degree) {
    double lo = 1.0;
    double hi = static_cast<double>(max_degree);
    if (floored_mean(tau, lo, max_degree) > target) {
        throw GenerationError("target average degree is below what the degree law allows with min degree 1");
    }
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (floored_mean(tau, mid, max_degree) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::uint64_t key(NodeId a, NodeId b, std::size_t n) {
    const auto e = canonical(a, b);
    return static_cast<std::uint64_t>(e.u) * n + e.v;
}

struct WiringResult {
    std::size_t sweeps = 0;
    std::size_t unresolved = 0;
};

/// Pairs stubs at random into `layer`, then repairs invalid pairs (self-loops,
/// duplicates, or pairs rejected by `allowed`) by swapping endpoints with
/// random valid edges of the same layer.
template <typename Allowed>
WiringResult wire_layer(std::vector<NodeId> stubs, std::size_t n, Allowed allowed, std::unordered_set<std::uint64_t>& present,
                        std::vector<Edge>& layer, std::size_t max_sweeps, Rng& rng) {
    std::shuffle(stubs.begin(), stubs.end(), rng);
    const std::size_t first = layer.size();
    std::vector<Edge> bad;
    auto valid = [&](NodeId a, NodeId b) { return a != b && allowed(a, b) && !present.contains(key(a, b, n)); };

    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
        const NodeId a = stubs[i];
        const NodeId b = stubs[i + 1];
        if (valid(a, b)) {
            present.insert(key(a, b, n));
            layer.push_back(canonical(a, b));
        } else {
            bad.push_back({a, b});
        }
    }

    WiringResult result;
    while (!bad.empty() && result.sweeps < max_sweeps) {
        ++result.sweeps;
        std::vector<Edge> still_bad;
        for (const auto& e : bad) {
            const std::size_t pool = layer.size() - first;
            if (pool == 0) {
                still_bad.push_back(e);
                continue;
            }
            const std::size_t idx = first + std::uniform_int_distribution<std::size_t>(0, pool - 1)(rng);
            NodeId c = layer[idx].u;
            NodeId d = layer[idx].v;
            if (std::bernoulli_distribution(0.5)(rng)) {
                std::swap(c, d);
            }
            // Replace {a-b, c-d} by {a-c, b-d}; the old c-d edge is released first.
            present.erase(key(c, d, n));
            const bool ok = valid(e.u, c) && valid(e.v, d) && key(e.u, c, n) != key(e.v, d, n);
            if (ok) {
                present.insert(key(e.u, c, n));
                present.insert(key(e.v, d, n));
                layer[idx] = canonical(e.u, c);
                layer.push_back(canonical(e.v, d));
            } else {
                present.insert(key(c, d, n));
                still_bad.push_back(e);
            }
        }
        bad = std::move(still_bad);
    }
    result.unresolved = bad.size();
    return result;
}

std::vector<std::size_t> draw_community_sizes(const GenSpec& spec, Rng& rng) {
    const auto& p = spec.lfr;
    const PowerLaw law(p.tau2, static_cast<double>(p.min_community), static_cast<double>(p.max_community) + 1.0);
    std::vector<std::size_t> sizes;
    std::size_t total = 0;
    while (total < spec.n) {
        const auto s = std::min(static_cast<std::size_t>(std::floor(law.sample(rng))), p.max_community);
        sizes.push_back(s);
        total += s;
    }
    while (total > spec.n) {
        std::vector<std::size_t> shrinkable;
        for (std::size_t c = 0; c < sizes.size(); ++c) {
            if (sizes[c] > p.min_community) {
                shrinkable.push_back(c);
            }
        }
        if (shrinkable.empty()) {
            total -= sizes.back();
            sizes.pop_back();
            while (total < spec.n) {
                std::vector<std::size_t> growable;
                for (std::size_t c = 0; c < sizes.size(); ++c) {
                    if (sizes[c] < p.max_community) {
                        growable.push_back(c);
                    }
                }
                if (growable.empty()) {
                    throw Infeasible{"community size bounds cannot partition the node set"};
                }
                ++sizes[growable[std::uniform_int_distribution<std::size_t>(0, growable.size() - 1)(rng)]];
                ++total;
            }
            break;
        }
        --sizes[shrinkable[std::uniform_int_distribution<std::size_t>(0, shrinkable.size() - 1)(rng)]];
        --total;
    }
    if (sizes.empty()) {
        throw Infeasible{"no communities drawn"};
    }
    return sizes;
}

LfrGraph attempt(const GenSpec& spec, double min_degree, Rng& rng) {
    const auto& p = spec.lfr;
    const std::size_t n = spec.n;

    // Degrees.
    const PowerLaw degree_law(p.tau1, min_degree, static_cast<double>(p.max_degree) + 1.0);
    std::vector<std::size_t> degree(n);
    std::size_t degree_sum = 0;
    for (auto& d : degree) {
        d = std::min(static_cast<std::size_t>(std::floor(degree_law.sample(rng))), p.max_degree);
        d = std::max<std::size_t>(d, 1);
        degree_sum += d;
    }
    if (degree_sum % 2 != 0) {
        std::vector<std::size_t> growable;
        for (std::size_t v = 0; v < n; ++v) {
            if (degree[v] < p.max_degree) {
                growable.push_back(v);
            }
        }
        if (growable.empty()) {
            throw Infeasible{"cannot fix degree parity"};
        }
        ++degree[growable[std::uniform_int_distribution<std::size_t>(0, growable.size() - 1)(rng)]];
    }

    // Internal/external split with stochastic rounding so E[external] = mu * degree.
    std::vector<std::size_t> internal(n);
    std::vector<std::size_t> external(n);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t v = 0; v < n; ++v) {
        const double want = p.mu * static_cast<double>(degree[v]);
        auto out = static_cast<std::size_t>(std::floor(want));
        if (unit(rng) < want - std::floor(want)) {
            ++out;
        }
        external[v] = std::min(out, degree[v]);
        internal[v] = degree[v] - external[v];
    }

    // Community assignment, most demanding nodes first.
    const auto sizes = draw_community_sizes(spec, rng);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return internal[a] > internal[b]; });
    std::vector<std::size_t> fill(sizes.size(), 0);
    std::vector<std::size_t> community(n);
    for (std::size_t v : order) {
        std::size_t slots = 0;
        for (std::size_t c = 0; c < sizes.size(); ++c) {
            if (sizes[c] > internal[v] && fill[c] < sizes[c]) {
                slots += sizes[c] - fill[c];
            }
        }
        if (slots == 0) {
            throw Infeasible{"no community can host a node with internal degree " + std::to_string(internal[v])};
        }
        auto pick = std::uniform_int_distribution<std::size_t>(0, slots - 1)(rng);
        for (std::size_t c = 0; c < sizes.size(); ++c) {
            if (sizes[c] > internal[v] && fill[c] < sizes[c]) {
                const std::size_t free = sizes[c] - fill[c];
                if (pick < free) {
                    community[v] = c;
                    ++fill[c];
                    break;
                }
                pick -= free;
            }
        }
    }

    std::vector<std::vector<NodeId>> members(sizes.size());
    for (std::size_t v = 0; v < n; ++v) {
        members[community[v]].push_back(static_cast<NodeId>(v));
    }

    // Each community needs an even internal stub count; move one stub to the
    // external side where it does not.
    for (const auto& group : members) {
        std::size_t sum = 0;
        for (NodeId v : group) {
            sum += internal[v];
        }
        if (sum % 2 != 0) {
            std::vector<NodeId> movable;
            for (NodeId v : group) {
                if (internal[v] > 0) {
                    movable.push_back(v);
                }
            }
            const NodeId v = movable[std::uniform_int_distribution<std::size_t>(0, movable.size() - 1)(rng)];
            --internal[v];
            ++external[v];
        }
    }

    std::unordered_set<std::uint64_t> present;
    present.reserve(degree_sum);
    LfrGraph out;
    std::vector<Edge> edges;
    for (const auto& group : members) {
        std::vector<NodeId> stubs;
        for (NodeId v : group) {
            stubs.insert(stubs.end(), internal[v], v);
        }
        std::vector<Edge> layer;
        const auto r = wire_layer(std::move(stubs), n, [](NodeId, NodeId) { return true; }, present, layer,
                                  p.max_rewire_sweeps, rng);
        out.rewire_sweeps = std::max(out.rewire_sweeps, r.sweeps);
        out.unresolved_stubs += r.unresolved;
        edges.insert(edges.end(), layer.begin(), layer.end());
    }
    {
        std::vector<NodeId> stubs;
        for (std::size_t v = 0; v < n; ++v) {
            stubs.insert(stubs.end(), external[v], static_cast<NodeId>(v));
        }
        std::vector<Edge> layer;
        const auto r = wire_layer(std::move(stubs), n,
                                  [&](NodeId a, NodeId b) { return community[a] != community[b]; }, present, layer,
                                  p.max_rewire_sweeps, rng);
        out.rewire_sweeps = std::max(out.rewire_sweeps, r.sweeps);
        out.unresolved_stubs += r.unresolved;
        edges.insert(edges.end(), layer.begin(), layer.end());
    }

    out.graph = Graph::with_numeric_labels(n, edges);
    out.community = std::move(community);
    out.realized_mu = mixing_fraction(out.graph, out.community);
    out.realized_avg_degree = basic_stats(out.graph).avg_degree;
    return out;
}

} // namespace

LfrGraph gen_lfr(const GenSpec& spec) {
    GenSpec checked = spec;
    checked.topology = Topology::LFR;
    checked.validate();

    const double min_degree = solve_min_degree(spec.lfr.tau1, spec.target_avg_degree, spec.lfr.max_degree);
    Rng rng(spec.seed);
    std::string last_reason;
    for (std::size_t attempt_no = 0; attempt_no <= spec.lfr.max_retries; ++attempt_no) {
        try {
            return attempt(checked, min_degree, rng);
        } catch (const Infeasible& e) {
            last_reason = e.reason;
        }
    }
    throw GenerationError("LFR generation failed after " + std::to_string(spec.lfr.max_retries + 1) +
                          " attempts: " + last_reason);
}

} // namespace kgrank
