#include "kgrank/graph.hpp"

#include "kgrank/error.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>
#include <unordered_set>

namespace kgrank {

Graph::Graph(std::vector<std::string> labels, std::span<const Edge> edges) : labels_(std::move(labels)) {
    const std::size_t n = labels_.size();
    {
        std::unordered_set<std::string_view> seen;
        seen.reserve(n);
        for (const auto& l : labels_) {
            if (!seen.insert(l).second) {
                throw ParameterError("duplicate node label '" + l + "'");
            }
        }
    }

    std::vector<Edge> canon;
    canon.reserve(edges.size());
    for (const auto& e : edges) {
        if (e.u >= n || e.v >= n) {
            throw ParameterError("edge endpoint out of range");
        }
        if (e.u == e.v) {
            ++dropped_self_loops_;
            continue;
        }
        canon.push_back(canonical(e.u, e.v));
    }
    std::sort(canon.begin(), canon.end());
    const auto last = std::unique(canon.begin(), canon.end());
    dropped_duplicates_ = static_cast<std::size_t>(canon.end() - last);
    canon.erase(last, canon.end());
    edge_count_ = canon.size();

    std::vector<std::size_t> deg(n, 0);
    for (const auto& e : canon) {
        ++deg[e.u];
        ++deg[e.v];
    }
    offsets_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) {
        offsets_[v + 1] = offsets_[v] + deg[v];
    }
    adjacency_.resize(offsets_[n]);
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const auto& e : canon) {
        adjacency_[cursor[e.u]++] = e.v;
        adjacency_[cursor[e.v]++] = e.u;
    }
    for (std::size_t v = 0; v < n; ++v) {
        std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
                  adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]));
    }
}

Graph Graph::with_numeric_labels(std::size_t n, std::span<const Edge> edges) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back(std::to_string(i));
    }
    return Graph(std::move(labels), edges);
}

bool Graph::has_edge(NodeId a, NodeId b) const noexcept {
    if (a >= node_count() || b >= node_count()) {
        return false;
    }
    const auto nb = neighbors(a);
    return std::binary_search(nb.begin(), nb.end(), b);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (NodeId u = 0; u < node_count(); ++u) {
        for (NodeId v : neighbors(u)) {
            if (u < v) {
                out.push_back({u, v});
            }
        }
    }
    return out;
}

Graph from_edge_list(std::string_view text) {
    std::vector<std::string> labels;
    std::unordered_map<std::string, NodeId> ids;
    std::vector<Edge> edges;

    auto id_of = [&](std::string_view label) {
        auto [it, inserted] = ids.try_emplace(std::string(label), static_cast<NodeId>(labels.size()));
        if (inserted) {
            labels.emplace_back(label);
        }
        return it->second;
    };

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        std::vector<std::string_view> tokens;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
                ++i;
            }
            const std::size_t start = i;
            while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
                ++i;
            }
            if (i > start) {
                tokens.push_back(line.substr(start, i - start));
            }
        }
        if (tokens.empty() || tokens.front().front() == '#') {
            continue;
        }
        if (tokens.size() != 2) {
            throw ParseError("expected 2 node labels, found " + std::to_string(tokens.size()), line_no);
        }
        const NodeId a = id_of(tokens[0]);
        const NodeId b = id_of(tokens[1]);
        edges.push_back({a, b});
    }
    return Graph(std::move(labels), edges);
}

std::string to_edge_list(const Graph& g) {
    std::string out;
    for (const auto& e : g.edges()) {
        out += g.label(e.u);
        out += ' ';
        out += g.label(e.v);
        out += '\n';
    }
    return out;
}

std::vector<std::size_t> connected_components(const Graph& g) {
    constexpr auto unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> comp(g.node_count(), unset);
    std::size_t next = 0;
    std::vector<NodeId> stack;
    for (NodeId s = 0; s < g.node_count(); ++s) {
        if (comp[s] != unset) {
            continue;
        }
        comp[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            const NodeId v = stack.back();
            stack.pop_back();
            for (NodeId w : g.neighbors(v)) {
                if (comp[w] == unset) {
                    comp[w] = next;
                    stack.push_back(w);
                }
            }
        }
        ++next;
    }
    return comp;
}

Graph induced_subgraph(const Graph& g, std::vector<NodeId> nodes) {
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    constexpr auto absent = static_cast<NodeId>(-1);
    std::vector<NodeId> remap(g.node_count(), absent);
    std::vector<std::string> labels;
    labels.reserve(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        remap[nodes[i]] = static_cast<NodeId>(i);
        labels.push_back(g.label(nodes[i]));
    }
    std::vector<Edge> edges;
    for (NodeId u : nodes) {
        for (NodeId v : g.neighbors(u)) {
            if (u < v && remap[v] != absent) {
                edges.push_back({remap[u], remap[v]});
            }
        }
    }
    return Graph(std::move(labels), edges);
}

Graph largest_connected_component(const Graph& g) {
    if (g.node_count() == 0) {
        return g;
    }
    const auto comp = connected_components(g);
    const std::size_t count = *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<std::size_t> sizes(count, 0);
    for (auto c : comp) {
        ++sizes[c];
    }
    // Components are numbered by smallest contained id, so the first maximum
    // is the tie winner.
    const auto best = static_cast<std::size_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    std::vector<NodeId> nodes;
    nodes.reserve(sizes[best]);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (comp[v] == best) {
            nodes.push_back(v);
        }
    }
    return induced_subgraph(g, std::move(nodes));
}

GraphStats basic_stats(const Graph& g) {
    GraphStats s;
    s.n = g.node_count();
    s.m = g.edge_count();
    s.avg_degree = s.n == 0 ? 0.0 : 2.0 * static_cast<double>(s.m) / static_cast<double>(s.n);
    if (s.n > 0) {
        const auto comp = connected_components(g);
        s.component_count = *std::max_element(comp.begin(), comp.end()) + 1;
    }
    return s;
}

} // namespace kgrank
