#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace extcore {

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

/// Finite simple undirected graph on vertices 0..n-1. Immutable once built.
///
/// Adjacency is kept twice: sorted neighbor lists for iteration and one
/// bitset row per vertex for O(1) adjacency tests.
class Graph {
public:
    Graph() = default;

    /// Throws InputError on an endpoint >= n or a self-loop. Duplicate
    /// edges (in either orientation) are merged.
    Graph(std::size_t n, std::span<const Edge> edges);

    std::size_t size() const { return adjacency_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    std::span<const VertexId> neighbors(VertexId v) const;
    std::size_t degree(VertexId v) const { return neighbors(v).size(); }
    bool adjacent(VertexId u, VertexId v) const;

    const boost::dynamic_bitset<>& neighbor_bits(VertexId v) const;

    /// Every edge once, as (u, v) with u < v, in lexicographic order.
    std::vector<Edge> edges() const;

private:
    void check_vertex(VertexId v) const;

    std::vector<std::vector<VertexId>> adjacency_;
    std::vector<boost::dynamic_bitset<>> bits_;
    std::size_t edge_count_ = 0;
};

Graph build_graph(std::size_t n, std::span<const Edge> edges);

struct Subgraph {
    Graph graph;
    /// new id -> old id
    std::vector<VertexId> to_original;
    /// old id -> new id, kNoVertex for dropped vertices
    std::vector<VertexId> from_original;
};

/// Induced subgraph on `keep`. New ids follow ascending old ids.
Subgraph induced_subgraph(const Graph& g, std::span<const VertexId> keep);

std::size_t degree(const Graph& g, VertexId v);

bool is_triangle_free(const Graph& g);

/// Length of a shortest cycle; nullopt for forests.
std::optional<std::size_t> girth(const Graph& g);

/// Connected components, each sorted ascending, ordered by smallest member.
std::vector<std::vector<VertexId>> connected_components(const Graph& g);

// Small fixtures used all over the tests and the CLI examples.
Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph complete_graph(std::size_t n);

} // namespace extcore
