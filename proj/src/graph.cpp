#include "extcore/graph.hpp"

#include "extcore/errors.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace extcore {

Graph::Graph(std::size_t n, std::span<const Edge> edges)
    : adjacency_(n)
    , bits_(n, boost::dynamic_bitset<>(n))
{
    for (const auto& [u, v] : edges) {
        if (u >= n || v >= n)
            throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v)
                + ") has an endpoint outside 0.." + std::to_string(n == 0 ? 0 : n - 1));
        if (u == v)
            throw InputError("self-loop on vertex " + std::to_string(u));
        if (bits_[u].test(v))
            continue;
        bits_[u].set(v);
        bits_[v].set(u);
        adjacency_[u].push_back(v);
        adjacency_[v].push_back(u);
        ++edge_count_;
    }
    for (auto& nbrs : adjacency_)
        std::sort(nbrs.begin(), nbrs.end());
}

void Graph::check_vertex(VertexId v) const
{
    if (v >= size())
        throw InputError("vertex " + std::to_string(v) + " out of range (n="
            + std::to_string(size()) + ")");
}

std::span<const VertexId> Graph::neighbors(VertexId v) const
{
    check_vertex(v);
    return adjacency_[v];
}

bool Graph::adjacent(VertexId u, VertexId v) const
{
    check_vertex(u);
    check_vertex(v);
    return bits_[u].test(v);
}

const boost::dynamic_bitset<>& Graph::neighbor_bits(VertexId v) const
{
    check_vertex(v);
    return bits_[v];
}

std::vector<Edge> Graph::edges() const
{
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (VertexId u = 0; u < size(); ++u)
        for (VertexId v : adjacency_[u])
            if (u < v)
                out.emplace_back(u, v);
    return out;
}

Graph build_graph(std::size_t n, std::span<const Edge> edges) { return Graph(n, edges); }

Subgraph induced_subgraph(const Graph& g, std::span<const VertexId> keep)
{
    Subgraph sub;
    sub.from_original.assign(g.size(), kNoVertex);
    for (VertexId v : keep) {
        if (v >= g.size())
            throw InputError("vertex " + std::to_string(v) + " out of range (n="
                + std::to_string(g.size()) + ")");
        sub.from_original[v] = 0;
    }
    for (VertexId v = 0; v < g.size(); ++v) {
        if (sub.from_original[v] == kNoVertex)
            continue;
        sub.from_original[v] = static_cast<VertexId>(sub.to_original.size());
        sub.to_original.push_back(v);
    }
    std::vector<Edge> edges;
    for (const auto& [u, v] : g.edges())
        if (sub.from_original[u] != kNoVertex && sub.from_original[v] != kNoVertex)
            edges.emplace_back(sub.from_original[u], sub.from_original[v]);
    sub.graph = Graph(sub.to_original.size(), edges);
    return sub;
}

std::size_t degree(const Graph& g, VertexId v) { return g.degree(v); }

bool is_triangle_free(const Graph& g)
{
    for (VertexId u = 0; u < g.size(); ++u)
        for (VertexId v : g.neighbors(u))
            if (u < v && (g.neighbor_bits(u) & g.neighbor_bits(v)).any())
                return false;
    return true;
}

std::optional<std::size_t> girth(const Graph& g)
{
    // BFS from every root; a non-tree edge closing at depths (d_u, d_v)
    // witnesses a closed walk of length d_u + d_v + 1 containing a cycle no
    // longer than that, and the minimum over roots is exact.
    std::optional<std::size_t> best;
    std::vector<std::size_t> dist(g.size());
    std::vector<VertexId> parent(g.size());
    for (VertexId root = 0; root < g.size(); ++root) {
        std::fill(dist.begin(), dist.end(), std::numeric_limits<std::size_t>::max());
        dist[root] = 0;
        parent[root] = kNoVertex;
        std::deque<VertexId> queue{root};
        while (!queue.empty()) {
            const VertexId u = queue.front();
            queue.pop_front();
            if (best && 2 * dist[u] >= *best)
                break;
            for (VertexId v : g.neighbors(u)) {
                if (dist[v] == std::numeric_limits<std::size_t>::max()) {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if (parent[u] != v) {
                    const std::size_t len = dist[u] + dist[v] + 1;
                    if (!best || len < *best)
                        best = len;
                }
            }
        }
    }
    return best;
}

std::vector<std::vector<VertexId>> connected_components(const Graph& g)
{
    std::vector<std::vector<VertexId>> comps;
    std::vector<char> seen(g.size(), 0);
    for (VertexId s = 0; s < g.size(); ++s) {
        if (seen[s])
            continue;
        std::vector<VertexId> comp{s};
        seen[s] = 1;
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (VertexId v : g.neighbors(comp[i]))
                if (!seen[v]) {
                    seen[v] = 1;
                    comp.push_back(v);
                }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

Graph cycle_graph(std::size_t n)
{
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i)
        e.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>((i + 1) % n));
    return Graph(n, e);
}

Graph path_graph(std::size_t n)
{
    std::vector<Edge> e;
    for (std::size_t i = 0; i + 1 < n; ++i)
        e.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>(i + 1));
    return Graph(n, e);
}

Graph complete_graph(std::size_t n)
{
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            e.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>(j));
    return Graph(n, e);
}

} // namespace extcore
