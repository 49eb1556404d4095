#include "extcore/core.hpp"
#include "extcore/errors.hpp"
#include "extcore/lattice.hpp"
#include "extcore/suites.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace extcore;

namespace {

const Rational k52(5, 2);
const Rational k73(7, 3);

Graph from_edges(std::size_t n, std::vector<Edge> edges) { return Graph(n, edges); }

/// Two hubs joined by three internally disjoint paths of the given lengths.
Graph theta(std::size_t p, std::size_t q, std::size_t r)
{
    std::vector<Edge> edges;
    VertexId next = 2;
    for (std::size_t len : {p, q, r}) {
        VertexId prev = 0;
        for (std::size_t i = 1; i < len; ++i) {
            edges.emplace_back(prev, next);
            prev = next++;
        }
        edges.emplace_back(prev, 1);
    }
    return Graph(next, edges);
}

/// K4 on {0,1,2,3}, path 0-4-5-6, vertex 6 also adjacent to 7 and 8,
/// 7-8, and 8 inside a second K4 on {8,9,10,11}. The only removable
/// feature at x = 5/2 is the 1-handle 0,4,5,6 with v_{n+1} = 7.
Graph one_handle_graph()
{
    return from_edges(12, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {0, 4}, {4, 5}, {5, 6}, {6, 7}, {6, 8},
                              {7, 8}, {8, 9}, {8, 10}, {8, 11}, {9, 10}, {9, 11}, {10, 11}});
}

/// Two triangles, each glued to a K4, joined through vertex 6. At x = 5/2
/// the only removable feature is the 2-handle with v_{-1}=1, path 0,6,7 and
/// v_{n+1}=8, so level 1 removes nothing.
Graph two_handle_graph()
{
    // 0: 1, 2, 6   (v_0, degree 3)
    // 1: 0, 2      (v_{-1}, degree 2)
    // 2: 0, 1, K4 {2,3,4,5}
    // 6: 0, 7      (interior)
    // 7: 6, 8, 9   (v_n, degree 3)
    // 8: 7, 9      (v_{n+1}, degree 2)
    // 9: 7, 8, K4 {9,10,11,12}
    return from_edges(13, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5}, {0, 6}, {6, 7},
                              {7, 8}, {7, 9}, {8, 9}, {9, 10}, {9, 11}, {9, 12}, {10, 11}, {10, 12}, {11, 12}});
}

bool is_subset_of(const std::vector<VertexId>& a, const std::vector<VertexId>& b)
{
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Graph random_sparse_graph(std::size_t n, std::size_t extra, std::mt19937_64& rng)
{
    std::vector<Edge> edges;
    for (VertexId v = 1; v < n; ++v)
        edges.emplace_back(static_cast<VertexId>(rng() % v), v);
    for (std::size_t k = 0; k < extra; ++k) {
        const auto u = static_cast<VertexId>(rng() % n);
        const auto v = static_cast<VertexId>(rng() % n);
        if (u != v)
            edges.emplace_back(u, v);
    }
    return Graph(n, edges);
}

} // namespace

TEST(HandleDescriptor, InteriorAndRecolored)
{
    HandleDescriptor plain{HandleKind::plain, {3, 4, 5, 6}, std::nullopt, std::nullopt, {}};
    EXPECT_EQ(plain.length(), 3u);
    EXPECT_EQ(plain.interior(), (std::vector<VertexId>{4, 5}));
    EXPECT_EQ(plain.recolored(), (std::vector<VertexId>{4, 5}));

    HandleDescriptor one{HandleKind::one_handle, {3, 4, 5, 6}, 7, std::nullopt, {}};
    EXPECT_EQ(one.recolored(), (std::vector<VertexId>{4, 5, 6, 7}));

    HandleDescriptor two{HandleKind::two_handle, {3, 4, 5}, 7, 2, {}};
    EXPECT_EQ(two.recolored(), (std::vector<VertexId>{2, 3, 4, 5, 7}));
}

TEST(Names, RoundTrip)
{
    for (auto k : {HandleKind::plain, HandleKind::one_handle, HandleKind::two_handle, HandleKind::parity})
        EXPECT_EQ(parse_handle_kind(to_string(k)), k);
    EXPECT_EQ(parse_core_variant("co"), CoreVariant::co);
    EXPECT_THROW(parse_core_variant("xx"), InputError);
}

TEST(Core, CoVariantNeedsXBetweenTwoAndThree)
{
    EXPECT_THROW(compute_core(cycle_graph(6), Rational(3), CoreLevel::two, CoreVariant::co), PreconditionError);
    EXPECT_THROW(compute_core(cycle_graph(6), Rational(3, 2), CoreLevel::two, CoreVariant::co), PreconditionError);
    EXPECT_NO_THROW(compute_core(cycle_graph(6), Rational(2), CoreLevel::two, CoreVariant::co));
}

TEST(Core, TreesVanish)
{
    const Graph tree = from_edges(7, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}});
    const auto res = compute_core(tree, k52, CoreLevel::one, CoreVariant::ch);
    EXPECT_TRUE(res.trace.core.empty());
    EXPECT_EQ(res.core.graph.size(), 0u);
    for (const auto& s : res.trace.steps)
        EXPECT_TRUE(s.is_vertex());
}

TEST(Core, EvenCycleAtIntegerXIsItsOwnCore)
{
    const auto res = compute_core(cycle_graph(6), Rational(2), CoreLevel::one, CoreVariant::ch);
    EXPECT_EQ(res.trace.core.size(), 6u);
    EXPECT_TRUE(res.trace.steps.empty());
}

TEST(Core, LongCycleLosesAHandle)
{
    // C8 at x = 5/2: a handle of length 4 opens the cycle, the rest peels.
    const auto res = compute_core(cycle_graph(8), k52, CoreLevel::one, CoreVariant::ch);
    EXPECT_TRUE(res.trace.core.empty());
    ASSERT_FALSE(res.trace.steps.empty());
    EXPECT_FALSE(res.trace.steps.front().is_vertex());
    EXPECT_EQ(res.trace.steps.front().handle().kind, HandleKind::plain);
    EXPECT_EQ(res.trace.steps.front().handle().length(), 4u);

    // In C5 a path of length 4 through all five vertices is still a handle.
    EXPECT_TRUE(compute_core(cycle_graph(5), k52, CoreLevel::one, CoreVariant::ch).trace.core.empty());
    // C4 has no path of length 4 with distinct endpoints.
    EXPECT_EQ(compute_core(cycle_graph(4), k52, CoreLevel::one, CoreVariant::ch).trace.core.size(), 4u);
}

TEST(Core, HexagonRegionVanishes)
{
    const std::vector<LatticeCoord> ring{{-1, 0}, {1, 0}, {-1, 1}, {0, 1}, {0, -1}, {1, -1}};
    const auto r = build_region(ring);
    EXPECT_TRUE(compute_core(r.graph(), k52, CoreLevel::one, CoreVariant::ch).trace.core.empty());
}

TEST(Core, FindsOneHandle)
{
    const Graph g = one_handle_graph();
    const auto step = find_removable(g, k52, CoreLevel::one, CoreVariant::ch);
    ASSERT_TRUE(step.has_value());
    ASSERT_FALSE(step->is_vertex());
    const auto& h = step->handle();
    EXPECT_EQ(h.kind, HandleKind::one_handle);
    EXPECT_EQ(h.path, (std::vector<VertexId>{0, 4, 5, 6}));
    EXPECT_EQ(h.next, 7u);
    EXPECT_EQ(step->removed(), (std::vector<VertexId>{4, 5}));
    EXPECT_EQ(step->fixed_neighbors.at(6), (std::vector<VertexId>{8}));
    EXPECT_EQ(step->fixed_neighbors.at(7), (std::vector<VertexId>{8}));
    EXPECT_EQ(step->fixed_neighbors.at(4), (std::vector<VertexId>{0}));
}

TEST(Core, FindsTwoHandleOnlyAtLevelTwo)
{
    const Graph g = two_handle_graph();
    EXPECT_FALSE(find_removable(g, k52, CoreLevel::one, CoreVariant::ch).has_value());
    const auto step = find_removable(g, k52, CoreLevel::two, CoreVariant::ch);
    ASSERT_TRUE(step.has_value());
    ASSERT_FALSE(step->is_vertex());
    const auto& h = step->handle();
    EXPECT_EQ(h.kind, HandleKind::two_handle);
    EXPECT_EQ(h.length(), 2u);
    EXPECT_EQ(h.interior(), (std::vector<VertexId>{6}));

    const auto one = compute_core(g, k52, CoreLevel::one, CoreVariant::ch);
    const auto two = compute_core(g, k52, CoreLevel::two, CoreVariant::ch);
    EXPECT_EQ(one.trace.core.size(), g.size());
    EXPECT_LT(two.trace.core.size(), g.size());
    EXPECT_TRUE(is_subset_of(two.trace.core, one.trace.core));
}

TEST(Core, IdempotentAndInduced)
{
    std::mt19937_64 rng(21);
    for (int t = 0; t < 60; ++t) {
        const Graph g = random_sparse_graph(8 + t % 12, 2 + t % 6, rng);
        for (auto level : {CoreLevel::one, CoreLevel::two}) {
            const auto res = compute_core(g, k52, level, CoreVariant::ch);
            const auto again = compute_core(res.core.graph, k52, level, CoreVariant::ch);
            EXPECT_TRUE(again.trace.steps.empty());
            EXPECT_EQ(res.core.graph.size(), res.trace.core.size());
            for (auto [u, v] : g.edges()) {
                const auto nu = res.core.from_original[u];
                const auto nv = res.core.from_original[v];
                if (nu != kNoVertex && nv != kNoVertex)
                    EXPECT_TRUE(res.core.graph.adjacent(nu, nv));
            }
        }
    }
}

TEST(Core, Monotonicity)
{
    std::mt19937_64 rng(31);
    for (int t = 0; t < 60; ++t) {
        const Graph g = random_sparse_graph(10 + t % 10, 3 + t % 8, rng);
        for (const auto& x : {k52, k73}) {
            const auto one = compute_core(g, x, CoreLevel::one, CoreVariant::ch).trace.core;
            const auto two = compute_core(g, x, CoreLevel::two, CoreVariant::ch).trace.core;
            const auto co = compute_core(g, x, CoreLevel::two, CoreVariant::co).trace.core;
            EXPECT_TRUE(is_subset_of(two, one));
            EXPECT_TRUE(is_subset_of(co, two));
        }
    }
}

TEST(Core, ReplayReproducesAndRejectsTampering)
{
    const Graph g = one_handle_graph();
    auto res = compute_core(g, k52, CoreLevel::one, CoreVariant::ch);
    const auto steps = replay_trace(g, res.trace);
    ASSERT_EQ(steps.size(), res.trace.steps.size());
    for (std::size_t i = 0; i < steps.size(); ++i)
        EXPECT_EQ(steps[i].fixed_neighbors, res.trace.steps[i].fixed_neighbors);

    auto wrong_core = res.trace;
    wrong_core.core.push_back(4);
    std::sort(wrong_core.core.begin(), wrong_core.core.end());
    EXPECT_THROW(replay_trace(g, wrong_core), InputError);

    auto bad_vertex = res.trace;
    bad_vertex.steps.insert(bad_vertex.steps.begin(), ReductionStep{VertexId{8}, {}});
    EXPECT_THROW(replay_trace(g, bad_vertex), InputError);

    auto bad_handle = res.trace;
    ASSERT_FALSE(bad_handle.steps.front().is_vertex());
    std::get<HandleDescriptor>(bad_handle.steps.front().payload).next = 8;
    EXPECT_THROW(replay_trace(g, bad_handle), InputError);

    EXPECT_THROW(replay_trace(cycle_graph(5), res.trace), InputError);
}

TEST(ParityWitness, Examples)
{
    const Graph c6 = cycle_graph(6);
    const HandleDescriptor arc3{HandleKind::plain, {0, 1, 2, 3}, std::nullopt, std::nullopt, {}};
    const auto w = parity_handle_witness(c6, arc3);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(*w, (std::vector<VertexId>{0, 5, 4, 3}));

    const Graph c5 = cycle_graph(5);
    EXPECT_FALSE(parity_handle_witness(c5, {HandleKind::plain, {0, 1, 2}, std::nullopt, std::nullopt, {}}));
    EXPECT_FALSE(parity_handle_witness(c5, {HandleKind::plain, {0, 1, 2, 3}, std::nullopt, std::nullopt, {}}));

    // Theta 4/4/4: hubs 0 and 1, arcs 0-2-3-4-1, 0-5-6-7-1, 0-8-9-10-1.
    const Graph th = theta(4, 4, 4);
    const HandleDescriptor arc{HandleKind::plain, {0, 2, 3, 4, 1}, std::nullopt, std::nullopt, {}};
    const auto tw = parity_handle_witness(th, arc);
    ASSERT_TRUE(tw.has_value());
    EXPECT_EQ(tw->size(), 5u);
    EXPECT_EQ(tw->front(), 0u);
    EXPECT_EQ(tw->back(), 1u);
}

TEST(ParityWitness, NeedsSimplePathNotWalk)
{
    // Handle 0-1-2-3-4-5 of length 5; the only other route is 0-6-5 (even).
    // The walk 0-6-7-8-6-5 has length 5 by going round the triangle 6-7-8,
    // but it repeats 6, so there is no witness.
    const Graph g = from_edges(9, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 6}, {6, 5}, {6, 7}, {7, 8}, {8, 6}});
    const HandleDescriptor h{HandleKind::plain, {0, 1, 2, 3, 4, 5}, std::nullopt, std::nullopt, {}};
    EXPECT_FALSE(parity_handle_witness(g, h).has_value());

    // A genuine odd detour 0-6-7-5 is found.
    const Graph g2 = from_edges(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 6}, {6, 7}, {7, 5}});
    EXPECT_EQ(parity_handle_witness(g2, h), (std::vector<VertexId>{0, 6, 7, 5}));
}

TEST(Core, ParityHandlesRemoveEvenCycles)
{
    // C6 at x = 2 under co: a length-3 arc has the other arc as witness.
    const auto res = compute_core(cycle_graph(6), Rational(2), CoreLevel::two, CoreVariant::co);
    EXPECT_TRUE(res.trace.core.empty());
    bool saw_parity = false;
    for (const auto& s : res.trace.steps)
        if (!s.is_vertex() && s.handle().kind == HandleKind::parity) {
            saw_parity = true;
            EXPECT_FALSE(s.handle().witness.empty());
        }
    EXPECT_TRUE(saw_parity);
    EXPECT_NO_THROW(replay_trace(cycle_graph(6), res.trace));

    // Odd cycles keep their parity obstruction at x = 2.
    EXPECT_EQ(compute_core(cycle_graph(5), Rational(2), CoreLevel::two, CoreVariant::co).trace.core.size(), 5u);
}

TEST(Lift, SingleLowDegreeStep)
{
    const Graph k2 = complete_graph(2);
    ReductionTrace trace;
    trace.x = k52;
    trace.steps.push_back({VertexId{0}, {}});
    trace.core = {1};
    const ColorList lists{{1, 2}, {2, 3}};
    const auto c = lift_choosability(k2, trace, lists, {{}, {2}}, 1);
    EXPECT_EQ(c, (ChoiceAssignment{{1}, {2}}));
}

TEST(Lift, RejectsBadCoreChoice)
{
    const Graph k2 = complete_graph(2);
    ReductionTrace trace;
    trace.x = k52;
    trace.steps.push_back({VertexId{0}, {}});
    trace.core = {1};
    const ColorList lists{{1, 2}, {2, 3}};
    EXPECT_THROW(lift_choosability(k2, trace, lists, {{}, {5}}, 1), InputError);
    EXPECT_THROW(lift_choosability(k2, trace, lists, {{}}, 1), InputError);
}

TEST(Lift, EmptyCoreRegionsTakeRandomLists)
{
    std::mt19937_64 rng(41);
    const auto corpus = region_corpus(4, 77);
    for (const auto& r : corpus) {
        const auto res = compute_core(r.graph(), k52, CoreLevel::one, CoreVariant::ch);
        ASSERT_TRUE(res.trace.core.empty());
        for (int t = 0; t < 50; ++t) {
            const auto lists = random_lists(r.size(), 5, 5 + t % 5, rng);
            const auto c = lift_choosability(r.graph(), res.trace, lists, ChoiceAssignment(r.size()), 2);
            EXPECT_TRUE(verify_choice(r.graph(), lists, constant_weight(r.size(), 2), c).ok());
        }
    }
}

TEST(Lift, ThetaGraphEndToEnd)
{
    const Graph th = theta(4, 4, 4);
    std::mt19937_64 rng(43);
    for (auto level : {CoreLevel::one, CoreLevel::two}) {
        const auto res = compute_core(th, k52, level, CoreVariant::ch);
        ASSERT_FALSE(res.trace.steps.empty());
        EXPECT_FALSE(res.trace.steps.front().is_vertex());
        for (int t = 0; t < 100; ++t) {
            const auto lists = random_lists(th.size(), 5, 5 + t % 6, rng);
            ColorList core_lists;
            for (VertexId v : res.core.to_original)
                core_lists.push_back(lists[v]);
            const auto core_sol
                = solve_list_weight(res.core.graph, core_lists, constant_weight(res.core.graph.size(), 2));
            ASSERT_TRUE(core_sol.has_value());
            ChoiceAssignment core_choice(th.size());
            for (VertexId i = 0; i < res.core.to_original.size(); ++i)
                core_choice[res.core.to_original[i]] = (*core_sol)[i];
            const auto c = lift_choosability(th, res.trace, lists, core_choice, 2);
            EXPECT_TRUE(verify_choice(th, lists, constant_weight(th.size(), 2), c).ok());
        }
    }
}

TEST(Lift, OneAndTwoHandleGraphs)
{
    std::mt19937_64 rng(47);
    for (const Graph& g : {one_handle_graph(), two_handle_graph()}) {
        const auto res = compute_core(g, k52, CoreLevel::two, CoreVariant::ch);
        std::size_t lifted = 0;
        for (int t = 0; t < 200; ++t) {
            const auto lists = random_lists(g.size(), 6, 12, rng);
            ColorList core_lists;
            for (VertexId v : res.core.to_original)
                core_lists.push_back(lists[v]);
            const auto core_sol
                = solve_list_weight(res.core.graph, core_lists, constant_weight(res.core.graph.size(), 2));
            if (!core_sol)
                continue;
            ChoiceAssignment core_choice(g.size());
            for (VertexId i = 0; i < res.core.to_original.size(); ++i)
                core_choice[res.core.to_original[i]] = (*core_sol)[i];
            const auto c = lift_choosability(g, res.trace, lists, core_choice, 2);
            EXPECT_TRUE(verify_choice(g, lists, constant_weight(g.size(), 2), c).ok());
            ++lifted;
        }
        EXPECT_GT(lifted, 50u);
    }
}

TEST(Lift, RandomSparseGraphsWithEmptyCores)
{
    std::mt19937_64 rng(53);
    std::size_t lifted = 0;
    for (int t = 0; t < 200; ++t) {
        const Graph g = random_sparse_graph(6 + t % 15, t % 5, rng);
        const auto res = compute_core(g, k52, CoreLevel::two, CoreVariant::ch);
        if (!res.trace.core.empty())
            continue;
        const auto lists = random_lists(g.size(), 5, 7, rng);
        const auto c = lift_choosability(g, res.trace, lists, ChoiceAssignment(g.size()), 2);
        EXPECT_TRUE(verify_choice(g, lists, constant_weight(g.size(), 2), c).ok());
        ++lifted;
    }
    EXPECT_GT(lifted, 50u);
}

TEST(Lift, EmptyCoreMeansChoosableOnTinyGraphs)
{
    // Exhaustive check of the checkable direction on graphs up to 4 vertices.
    std::mt19937_64 rng(59);
    for (int t = 0; t < 25; ++t) {
        const Graph g = random_sparse_graph(2 + t % 3, t % 3, rng);
        const auto res = compute_core(g, k52, CoreLevel::one, CoreVariant::ch);
        if (res.trace.core.empty())
            EXPECT_TRUE(is_ab_choosable(g, {5, 2, 1}, Exhaustive{}).holds);
    }
}

TEST(Order, ProbeOnRegions)
{
    for (const auto& r : region_corpus(5, 13))
        EXPECT_TRUE(order_independence_probe(r.graph(), k52, 5, 1));
    EXPECT_TRUE(order_independence_probe(theta(4, 4, 4), k52, 10, 2));
}
