#include "extcore/core.hpp"
#include "extcore/errors.hpp"
#include "extcore/io.hpp"
#include "extcore/suites.hpp"

#include <gtest/gtest.h>

using namespace extcore;

TEST(GraphJson, RoundTrip)
{
    const Graph g = cycle_graph(5);
    const Json j = graph_to_json(g);
    EXPECT_EQ(j["n"], 5);
    const Graph back = graph_from_json(j);
    EXPECT_EQ(back.edges(), g.edges());
    EXPECT_EQ(graph_from_json(Json::parse(R"({"n":3,"edges":[]})")).size(), 3u);
}

TEST(GraphJson, Malformed)
{
    for (const char* bad : {R"({"edges":[]})", R"({"n":2,"edges":[[0,2]]})", R"({"n":2,"edges":[[0]]})",
             R"({"n":-1,"edges":[]})", R"({"n":2,"edges":[[0,"a"]]})", R"({"n":2,"edges":[[1,1]]})"})
        EXPECT_THROW(graph_from_json(Json::parse(bad)), InputError) << bad;
}

TEST(ListsJson, RoundTripAndValidation)
{
    const ColorList lists{{1, 2}, {2, 3}, {7}};
    EXPECT_EQ(lists_from_json(lists_to_json(lists), 3), lists);
    EXPECT_THROW(lists_from_json(Json::parse(R"({"lists":{"0":[1]}})"), 2), InputError);
    EXPECT_THROW(lists_from_json(Json::parse(R"({"lists":{"0":[1],"5":[2]}})"), 2), InputError);
    EXPECT_THROW(lists_from_json(Json::parse(R"({"lists":{"0":[1,1],"1":[2]}})"), 2), InputError);
    EXPECT_THROW(lists_from_json(Json::parse(R"({"lists":{"x":[1],"1":[2]}})"), 2), InputError);
}

TEST(ChoiceJson, RoundTrip)
{
    const ChoiceAssignment c{{1}, {}, {4, 5}};
    const auto j = choice_to_json(c);
    EXPECT_FALSE(j["choice"].contains("1"));
    EXPECT_EQ(choice_from_json(j, 3), c);
}

TEST(VerdictJson, Fields)
{
    Verdict v;
    v.holds = true;
    v.mode = VerdictMode::sampled;
    v.seed = 4;
    v.lists_checked = 10;
    const auto j = verdict_to_json(v);
    EXPECT_EQ(j["holds"], true);
    EXPECT_EQ(j["mode"], "sampled");
    EXPECT_EQ(j["proof"], false);
    EXPECT_TRUE(j["counterexample"].is_null());
    EXPECT_TRUE(j["witness"].is_null());
}

TEST(TraceJson, RoundTripReplays)
{
    for (const auto& r : region_corpus(5, 21)) {
        for (auto variant : {CoreVariant::ch, CoreVariant::co}) {
            const auto res = compute_core(r.graph(), Rational(7, 3), CoreLevel::two, variant);
            const auto j = trace_to_json(res.trace);
            EXPECT_EQ(j["x"], "7/3");
            const auto back = trace_from_json(Json::parse(j.dump()));
            EXPECT_EQ(back.core, res.trace.core);
            ASSERT_EQ(back.steps.size(), res.trace.steps.size());
            for (std::size_t i = 0; i < back.steps.size(); ++i)
                EXPECT_EQ(back.steps[i].payload, res.trace.steps[i].payload);
            EXPECT_NO_THROW(replay_trace(r.graph(), back));
        }
    }
}

TEST(TraceJson, Malformed)
{
    EXPECT_THROW(trace_from_json(Json::parse(R"({"x":"2.5","level":1,"variant":"ch","steps":[],"core":[]})")),
        InputError);
    EXPECT_THROW(trace_from_json(Json::parse(R"({"x":"5/2","level":3,"variant":"ch","steps":[],"core":[]})")),
        InputError);
    EXPECT_THROW(
        trace_from_json(Json::parse(R"({"x":"5/2","level":1,"variant":"ch","steps":[{"kind":"edge"}],"core":[]})")),
        InputError);
    EXPECT_THROW(trace_from_json(Json::parse(R"({"x":"5/2","level":1,"variant":"ch","steps":[{"kind":"handle",
        "handle_kind":"plain","path":[0,1,2],"interior":[0]}],"core":[]})")),
        InputError);
}

TEST(RegionText, RoundTripAndComments)
{
    const auto r = generate_region(RegionShape::random_walk, 25, 3, true);
    const auto text = region_to_text(r, {"hello"});
    EXPECT_EQ(text.rfind("# hello\n", 0), 0u);
    EXPECT_EQ(region_from_text(text).coords(), r.coords());
    EXPECT_EQ(region_from_text("# c\n0 0  # origin\n\n1 0\n").size(), 2u);
    EXPECT_THROW(region_from_text("0 0\n1\n"), InputError);
    EXPECT_THROW(region_from_text("0 0 0\n"), InputError);
    EXPECT_THROW(region_from_text("a b\n"), InputError);
}

TEST(RegionSidecar, RoundTrip)
{
    const auto r = generate_region(RegionShape::hex_patch, 2, 0, true);
    const auto g = graph_from_json(graph_to_json(r.graph()));
    EXPECT_EQ(region_from_sidecar(region_sidecar(r), g).coords(), r.coords());
    EXPECT_THROW(region_from_sidecar(region_sidecar(r), cycle_graph(3)), InputError);
}
