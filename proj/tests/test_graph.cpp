#include "extcore/errors.hpp"
#include "extcore/graph.hpp"

#include <gtest/gtest.h>

#include <deque>
#include <random>

using namespace extcore;

namespace {

Graph random_graph(std::size_t n, double p, std::mt19937_64& rng)
{
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v)
            if (coin(rng))
                edges.emplace_back(u, v);
    return Graph(n, edges);
}

// Shortest cycle through each edge: drop the edge, BFS between its ends.
std::optional<std::size_t> girth_oracle(const Graph& g)
{
    std::optional<std::size_t> best;
    for (auto [a, b] : g.edges()) {
        std::vector<int> dist(g.size(), -1);
        std::deque<VertexId> q{a};
        dist[a] = 0;
        while (!q.empty()) {
            const VertexId v = q.front();
            q.pop_front();
            for (VertexId u : g.neighbors(v)) {
                if ((v == a && u == b) || (v == b && u == a) || dist[u] >= 0)
                    continue;
                dist[u] = dist[v] + 1;
                q.push_back(u);
            }
        }
        if (dist[b] >= 0 && (!best || static_cast<std::size_t>(dist[b] + 1) < *best))
            best = dist[b] + 1;
    }
    return best;
}

} // namespace

TEST(Graph, BuildsAndDeduplicates)
{
    const std::vector<Edge> edges{{0, 1}, {1, 0}, {1, 2}, {0, 1}};
    const Graph g(4, edges);
    EXPECT_EQ(g.size(), 4u);
    EXPECT_EQ(g.edge_count(), 2u);
    EXPECT_TRUE(g.adjacent(0, 1));
    EXPECT_TRUE(g.adjacent(1, 0));
    EXPECT_FALSE(g.adjacent(0, 2));
    EXPECT_EQ(g.degree(1), 2u);
    EXPECT_EQ(g.degree(3), 0u);
    EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {1, 2}}));
}

TEST(Graph, RejectsBadEdges)
{
    const std::vector<Edge> loop{{1, 1}};
    const std::vector<Edge> out_of_range{{0, 3}};
    EXPECT_THROW(Graph(3, loop), InputError);
    EXPECT_THROW(Graph(3, out_of_range), InputError);
}

TEST(Graph, TriangleFreeness)
{
    EXPECT_FALSE(is_triangle_free(complete_graph(3)));
    EXPECT_TRUE(is_triangle_free(cycle_graph(4)));
    EXPECT_TRUE(is_triangle_free(cycle_graph(5)));
    EXPECT_TRUE(is_triangle_free(path_graph(6)));
    EXPECT_TRUE(is_triangle_free(Graph()));
}

TEST(Graph, GirthOfFixtures)
{
    EXPECT_EQ(girth(cycle_graph(5)), 5u);
    EXPECT_EQ(girth(cycle_graph(6)), 6u);
    EXPECT_EQ(girth(complete_graph(4)), 3u);
    EXPECT_FALSE(girth(path_graph(7)).has_value());
    const std::vector<Edge> two_cycles{{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}, {5, 6}, {6, 4}};
    EXPECT_EQ(girth(Graph(7, two_cycles)), 3u);
}

TEST(Graph, GirthMatchesEdgeDeletionOracle)
{
    std::mt19937_64 rng(11);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 3 + t % 10;
        const Graph g = random_graph(n, 0.15 + 0.05 * (t % 5), rng);
        EXPECT_EQ(girth(g), girth_oracle(g)) << "trial " << t;
    }
}

TEST(Graph, InducedSubgraphKeepsOrderAndEdges)
{
    const Graph c6 = cycle_graph(6);
    const std::vector<VertexId> keep{4, 0, 5, 1};
    const auto sub = induced_subgraph(c6, keep);
    EXPECT_EQ(sub.to_original, (std::vector<VertexId>{0, 1, 4, 5}));
    EXPECT_EQ(sub.from_original[4], 2u);
    EXPECT_EQ(sub.from_original[2], kNoVertex);
    // 0-1, 4-5, 5-0 survive.
    EXPECT_EQ(sub.graph.edge_count(), 3u);
    EXPECT_TRUE(sub.graph.adjacent(0, 1));
    EXPECT_TRUE(sub.graph.adjacent(2, 3));
    EXPECT_TRUE(sub.graph.adjacent(3, 0));
}

TEST(Graph, ConnectedComponents)
{
    const std::vector<Edge> edges{{0, 1}, {3, 4}};
    const auto comps = connected_components(Graph(5, edges));
    ASSERT_EQ(comps.size(), 3u);
    EXPECT_EQ(comps[0], (std::vector<VertexId>{0, 1}));
    EXPECT_EQ(comps[1], (std::vector<VertexId>{2}));
    EXPECT_EQ(comps[2], (std::vector<VertexId>{3, 4}));
}
