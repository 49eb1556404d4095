// extcore: extended cores, list choosability and lattice experiments.
//
// Exit codes: 0 holds, 1 refuted, 2 input error or exhausted budget,
// 3 passed on sampled evidence only.

#include "extcore/core.hpp"
#include "extcore/errors.hpp"
#include "extcore/io.hpp"
#include "extcore/lattice.hpp"
#include "extcore/list_coloring.hpp"
#include "extcore/suites.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <optional>

using namespace extcore;

namespace {

constexpr int kHolds = 0;
constexpr int kRefuted = 1;
constexpr int kInputError = 2;
constexpr int kSampledPass = 3;

struct CoreArgs {
    std::string graph;
    std::string x;
    int level = 1;
    std::string variant = "ch";
    std::string trace;
    std::string output;
};

struct CheckArgs {
    std::string graph;
    std::string mode = "choosable";
    std::size_t a = 0;
    std::size_t b = 0;
    std::optional<VertexId> vertex;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::optional<std::size_t> universe;
    std::uint64_t budget = Exhaustive{}.budget;
};

struct LiftArgs {
    std::string graph;
    std::string trace;
    std::string lists;
    std::size_t b = 0;
    std::string output;
};

struct VerifyArgs {
    std::string suite;
    std::size_t trials = 100;
    std::uint64_t seed = 1;
};

struct LatticeArgs {
    std::string shape = "random_walk";
    std::size_t size = 0;
    std::uint64_t seed = 0;
    bool triangle_free = false;
    std::string output;
    std::string graph;
    std::string coords;
};

int cmd_core(const CoreArgs& args)
{
    const Graph g = graph_from_json(read_json_file(args.graph));
    const Rational x = Rational::parse(args.x);
    const auto res = compute_core(g, x, static_cast<CoreLevel>(args.level), parse_core_variant(args.variant));
    if (!args.trace.empty())
        write_json_file(args.trace, trace_to_json(res.trace));
    if (!args.output.empty())
        write_json_file(args.output, graph_to_json(res.core.graph));
    std::cout << "core size: " << res.trace.core.size() << " (" << res.trace.steps.size() << " reduction steps)\n";
    return kHolds;
}

int cmd_check(const CheckArgs& args)
{
    const Graph g = graph_from_json(read_json_file(args.graph));
    const ABParams p{args.a, args.b, 0};
    validate(p);

    Verdict v;
    if (args.mode == "colorable") {
        auto res = is_ab_colorable(g, p);
        v.holds = res.colorable;
        v.mode = VerdictMode::exhaustive;
        v.witness = std::move(res.witness);
    } else {
        CheckMode mode = Exhaustive{args.budget};
        if (args.samples > 0)
            mode = Sampled{args.samples, args.seed, args.universe, 1};
        if (args.mode == "choosable") {
            v = is_ab_choosable(g, p, mode);
        } else {
            if (!args.vertex)
                throw InputError("free-choosable needs --vertex");
            v = is_ab_free_choosable(g, *args.vertex, p, mode);
        }
    }
    std::cout << verdict_to_json(v).dump() << '\n';
    if (!v.holds)
        return kRefuted;
    return v.is_proof() ? kHolds : kSampledPass;
}

int cmd_lift(const LiftArgs& args)
{
    const Graph g = graph_from_json(read_json_file(args.graph));
    const ReductionTrace trace = trace_from_json(read_json_file(args.trace));
    const ColorList lists = lists_from_json(read_json_file(args.lists), g.size());
    if (args.b < 1)
        throw InputError("--b must be at least 1");
    replay_trace(g, trace);

    // The core itself is solved exactly; the trace then carries the choice outwards.
    const Subgraph core = induced_subgraph(g, trace.core);
    ColorList core_lists;
    for (VertexId v : core.to_original)
        core_lists.push_back(lists[v]);
    const auto core_solution = solve_list_weight(core.graph, core_lists, constant_weight(core.graph.size(), args.b));
    if (!core_solution) {
        std::cerr << "the core has no " << args.b << "-choice on these lists\n";
        return kRefuted;
    }
    ChoiceAssignment core_choice(g.size());
    for (VertexId i = 0; i < core.to_original.size(); ++i)
        core_choice[core.to_original[i]] = (*core_solution)[i];

    ChoiceAssignment full;
    try {
        full = lift_choosability(g, trace, lists, core_choice, args.b);
    } catch (const InvariantViolation& e) {
        std::cerr << "lift failed: " << e.what() << '\n';
        return kRefuted;
    }
    if (args.output.empty())
        std::cout << choice_to_json(full).dump() << '\n';
    else
        write_json_file(args.output, choice_to_json(full));
    return kHolds;
}

int cmd_verify(const VerifyArgs& args)
{
    const auto rep = run_suite(args.suite, {args.trials, args.seed});
    std::cout << "suite " << rep.suite << ": " << rep.cases << " cases, " << rep.failures << " failures\n";
    for (const auto& line : rep.summary)
        std::cout << "  " << line << '\n';
    for (const auto& line : rep.problems)
        std::cout << "  FAIL " << line << '\n';
    return rep.passed() ? kHolds : kRefuted;
}

int cmd_lattice(const LatticeArgs& args)
{
    const RegionShape shape = parse_region_shape(args.shape);
    const LatticeRegion r = generate_region(shape, args.size, args.seed, args.triangle_free);
    const std::vector<std::string> header{"shape=" + args.shape + " size=" + std::to_string(args.size) + " seed="
            + std::to_string(args.seed) + " triangle_free=" + (args.triangle_free ? "1" : "0"),
        std::to_string(r.size()) + " vertices, " + std::to_string(r.graph().edge_count()) + " edges, triangle-free: "
            + (r.triangle_free() ? "yes" : "no")};
    const auto text = region_to_text(r, header);
    if (args.output.empty())
        std::cout << text;
    else
        write_text_file(args.output, text);
    if (!args.graph.empty())
        write_json_file(args.graph, graph_to_json(r.graph()));
    if (!args.coords.empty())
        write_json_file(args.coords, region_sidecar(r));
    return kHolds;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"extended cores, list choosability and triangular-lattice experiments"};
    app.require_subcommand(1);

    CoreArgs core_args;
    auto* core = app.add_subcommand("core", "reduce a graph to its extended core");
    core->add_option("graph", core_args.graph, "graph JSON")->required()->check(CLI::ExistingFile);
    core->add_option("--x", core_args.x, "ratio as NUM/DEN or an integer")->required();
    core->add_option("--level", core_args.level, "1 or 2")->check(CLI::IsMember({1, 2}));
    core->add_option("--variant", core_args.variant, "ch or co")->check(CLI::IsMember({"ch", "co"}));
    core->add_option("--trace", core_args.trace, "write the reduction trace here");
    core->add_option("-o,--output", core_args.output, "write the core graph here");

    CheckArgs check_args;
    auto* check = app.add_subcommand("check", "decide (a,b)-colorability or choosability");
    check->add_option("graph", check_args.graph, "graph JSON")->required()->check(CLI::ExistingFile);
    check->add_option("--mode", check_args.mode)->check(CLI::IsMember({"colorable", "choosable", "free-choosable"}));
    check->add_option("--a", check_args.a)->required();
    check->add_option("--b", check_args.b)->required();
    check->add_option("--vertex", check_args.vertex, "v0 for free-choosable");
    check->add_option("--samples", check_args.samples, "sample this many lists instead of enumerating");
    check->add_option("--seed", check_args.seed);
    check->add_option("--universe", check_args.universe, "color universe for sampling (default a*n)");
    check->add_option("--budget", check_args.budget, "exhaustive list-family budget");

    LiftArgs lift_args;
    auto* lift = app.add_subcommand("lift", "extend a choice of the core to the whole graph");
    lift->add_option("graph", lift_args.graph)->required()->check(CLI::ExistingFile);
    lift->add_option("trace", lift_args.trace)->required()->check(CLI::ExistingFile);
    lift->add_option("lists", lift_args.lists)->required()->check(CLI::ExistingFile);
    lift->add_option("--b", lift_args.b)->required();
    lift->add_option("-o,--output", lift_args.output, "assignment JSON (default stdout)");

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", verify_args.suite)->required()->check(CLI::IsMember(suite_names()));
    verify->add_option("--trials", verify_args.trials);
    verify->add_option("--seed", verify_args.seed);

    LatticeArgs lattice_args;
    auto* lattice = app.add_subcommand("lattice", "generate a triangular-lattice region");
    lattice->add_option("--shape", lattice_args.shape)
        ->check(CLI::IsMember({"random_walk", "hex_patch", "parallelogram"}));
    lattice->add_option("--size", lattice_args.size)->required()->check(CLI::PositiveNumber);
    lattice->add_option("--seed", lattice_args.seed);
    lattice->add_flag("--triangle-free", lattice_args.triangle_free);
    lattice->add_option("-o,--output", lattice_args.output, "region file (default stdout)");
    lattice->add_option("--graph", lattice_args.graph, "also write the graph JSON");
    lattice->add_option("--coords", lattice_args.coords, "also write the coordinate sidecar");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (*core)
            return cmd_core(core_args);
        if (*check)
            return cmd_check(check_args);
        if (*lift)
            return cmd_lift(lift_args);
        if (*verify)
            return cmd_verify(verify_args);
        return cmd_lattice(lattice_args);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
    } catch (const PreconditionError& e) {
        std::cerr << "precondition: " << e.what() << '\n';
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
    }
    return kInputError;
}
