#include "extcore/suites.hpp"

#include "extcore/core.hpp"
#include "extcore/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace extcore {

void SuiteReport::fail(std::string what)
{
    ++failures;
    if (problems.size() < 10)
        problems.push_back(std::move(what));
}

namespace {

std::size_t below(std::size_t n, std::mt19937_64& rng) { return static_cast<std::size_t>(rng() % n); }

std::size_t between(std::size_t lo, std::size_t hi, std::mt19937_64& rng) { return lo + below(hi - lo + 1, rng); }

std::string show(const ColorSet& s)
{
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < s.size(); ++i)
        out << (i ? "," : "") << s[i];
    out << '}';
    return out.str();
}

std::string show(const PathInstance& p)
{
    std::ostringstream out;
    for (std::size_t i = 0; i < p.lists.size(); ++i)
        out << (i ? " " : "") << show(p.lists[i]) << "/" << p.weights[i];
    return out.str();
}

std::string show(const LatticeRegion& r)
{
    std::ostringstream out;
    out << r.size() << " cells:";
    for (const auto& c : r.coords())
        out << " (" << c.x << "," << c.y << ")";
    return out.str();
}

template <class F>
std::string run_guarded(F&& f)
{
    try {
        f();
        return {};
    } catch (const std::exception& e) {
        return e.what();
    }
}

const std::vector<std::pair<std::size_t, std::size_t>> kBE{{1, 1}, {2, 1}, {2, 2}, {3, 2}};

ABParams ab_from_be(std::size_t b, std::size_t e) { return {2 * b + e, b, e}; }

/// Tally of handle steps by kind, e.g. "plain 12, one_handle 3".
std::string handle_tally(const std::vector<ReductionTrace>& traces)
{
    std::map<std::string, std::size_t> count;
    std::size_t cyclic = 0;
    for (const auto& t : traces) {
        bool any = false;
        for (const auto& s : t.steps)
            if (!s.is_vertex()) {
                ++count[to_string(s.handle().kind)];
                any = true;
            }
        cyclic += any;
    }
    std::string out = std::to_string(cyclic) + " regions needed handles (";
    bool first = true;
    for (const auto& [k, n] : count) {
        out += (first ? "" : ", ") + k + " " + std::to_string(n);
        first = false;
    }
    return out + ")";
}

std::size_t even_threshold(std::size_t b, std::size_t e)
{
    return static_cast<std::size_t>(*even_ceil(static_cast<std::int64_t>(2 * b), static_cast<std::int64_t>(e)));
}

} // namespace

ColorSet random_subset(std::size_t k, std::size_t universe, std::mt19937_64& rng)
{
    if (k > universe)
        throw PreconditionError("subset larger than its universe");
    std::vector<Color> pool(universe);
    std::iota(pool.begin(), pool.end(), 0);
    for (std::size_t i = 0; i < k; ++i)
        std::swap(pool[i], pool[i + below(universe - i, rng)]);
    pool.resize(k);
    return make_color_set(std::move(pool));
}

ColorList random_lists(std::size_t n, std::size_t size, std::size_t universe, std::mt19937_64& rng)
{
    ColorList out;
    out.reserve(n);
    for (std::size_t v = 0; v < n; ++v)
        out.push_back(random_subset(size, universe, rng));
    return out;
}

PathInstance waterfall_instance(const std::vector<std::size_t>& sizes,
    const std::vector<std::size_t>& overlaps, const WeightMap& weights)
{
    if (overlaps.size() + 1 != sizes.size())
        throw InputError("need one overlap per path edge");
    ColorList lists(sizes.size());
    Color next = 0;
    ColorSet shared_left;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const std::size_t left = i ? overlaps[i - 1] : 0;
        const std::size_t right = i + 1 < sizes.size() ? overlaps[i] : 0;
        if (left + right > sizes[i])
            throw InputError("overlaps exceed list size at vertex " + std::to_string(i));
        ColorSet l = shared_left;
        for (std::size_t k = left + right; k < sizes[i]; ++k)
            l.push_back(next++);
        ColorSet shared_right;
        for (std::size_t k = 0; k < right; ++k)
            shared_right.push_back(next++);
        l.insert(l.end(), shared_right.begin(), shared_right.end());
        lists[i] = make_color_set(std::move(l));
        shared_left = std::move(shared_right);
    }
    return PathInstance(std::move(lists), weights);
}

void for_each_small_waterfall(std::size_t max_n, std::size_t max_size, std::size_t max_colors,
    const std::function<void(const PathInstance&)>& visit)
{
    for (std::size_t n = 1; n <= max_n; ++n) {
        std::vector<std::size_t> sizes(n + 1, 1);
        std::vector<std::size_t> overlaps(n, 0);
        WeightMap weights(n + 1, 1);

        // Overlaps and weights for a fixed size vector, depth-first.
        auto weights_rec = [&](auto&& self, std::size_t i) -> void {
            if (i == sizes.size()) {
                visit(waterfall_instance(sizes, overlaps, weights));
                return;
            }
            for (std::size_t w = 1; w <= sizes[i]; ++w) {
                weights[i] = w;
                self(self, i + 1);
            }
        };
        auto overlaps_rec = [&](auto&& self, std::size_t i, std::size_t colors) -> void {
            if (i == n) {
                if (colors <= max_colors)
                    weights_rec(weights_rec, 0);
                return;
            }
            const std::size_t used_left = i ? overlaps[i - 1] : 0;
            for (std::size_t o = 0; o + used_left <= sizes[i] && o <= sizes[i + 1]; ++o) {
                overlaps[i] = o;
                self(self, i + 1, colors - o);
            }
        };
        auto sizes_rec = [&](auto&& self, std::size_t i) -> void {
            if (i == sizes.size()) {
                const std::size_t total = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
                overlaps_rec(overlaps_rec, 0, total);
                return;
            }
            for (std::size_t s = 1; s <= max_size; ++s) {
                sizes[i] = s;
                self(self, i + 1);
            }
        };
        sizes_rec(sizes_rec, 0);
    }
}

PathInstance random_waterfall(std::size_t max_n, std::size_t max_colors, std::mt19937_64& rng)
{
    for (;;) {
        const std::size_t n = between(1, max_n, rng);
        std::vector<std::size_t> sizes(n + 1);
        for (auto& s : sizes)
            s = between(1, 4, rng);
        std::vector<std::size_t> overlaps(n);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t used_left = i ? overlaps[i - 1] : 0;
            overlaps[i] = below(std::min(sizes[i] - used_left, sizes[i + 1]) + 1, rng);
        }
        // Keep the right end free to meet the next overlap.
        bool ok = true;
        for (std::size_t i = 1; i < n; ++i)
            ok = ok && overlaps[i - 1] + overlaps[i] <= sizes[i];
        const std::size_t colors = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0})
            - std::accumulate(overlaps.begin(), overlaps.end(), std::size_t{0});
        if (!ok || colors > max_colors)
            continue;
        WeightMap weights(n + 1);
        for (std::size_t i = 0; i <= n; ++i)
            weights[i] = between(1, sizes[i], rng);
        auto p = waterfall_instance(sizes, overlaps, weights);
        const auto relabel = random_subset(max_colors, max_colors, rng);
        std::vector<Color> perm(relabel.begin(), relabel.end());
        std::shuffle(perm.begin(), perm.end(), rng);
        for (auto& l : p.lists) {
            for (auto& c : l)
                c = perm[static_cast<std::size_t>(c)];
            std::sort(l.begin(), l.end());
        }
        return p;
    }
}

PathInstance random_good_path(std::size_t max_n, std::size_t universe, std::mt19937_64& rng)
{
    const std::size_t n = between(1, max_n, rng);
    WeightMap w(n + 1);
    for (auto& x : w)
        x = between(1, 2, rng);
    ColorList lists(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        std::size_t need = w[i];
        if (i > 0 && i < n)
            need = w[i] + w[i + 1];
        lists[i] = random_subset(std::min(universe, need + (below(4, rng) == 0)), universe, rng);
    }
    return PathInstance(std::move(lists), std::move(w));
}

PathInstance random_cor48_instance(const ABParams& p, std::size_t n, std::size_t universe, std::mt19937_64& rng)
{
    ColorList lists(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        lists[i] = random_subset(i == 0 || i == n ? p.b : p.a, universe, rng);
    return PathInstance(std::move(lists), constant_weight(n + 1, p.b));
}

PathInstance random_1_reduced(const ABParams& p, std::size_t n, std::size_t universe, std::mt19937_64& rng)
{
    for (;;) {
        ColorList lists(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            std::size_t size = p.a;
            if (i == 0)
                size = p.b;
            else if (i + 1 >= n)
                size = p.b + p.e;
            lists[i] = random_subset(size, universe, rng);
        }
        PathInstance inst(std::move(lists), constant_weight(n + 1, p.b));
        if (check_1_reduced(inst, p))
            return inst;
    }
}

std::vector<LatticeRegion> region_corpus(
    std::size_t count, std::uint64_t seed, std::size_t min_vertices, std::size_t max_vertices)
{
    std::mt19937_64 master(seed);
    std::vector<LatticeRegion> out;
    while (out.size() < count) {
        const std::size_t walk = between(min_vertices + 2, max_vertices + 30, master);
        const std::uint64_t region_seed = master();
        auto r = generate_region(RegionShape::random_walk, walk, region_seed, true);
        if (r.size() >= min_vertices && r.size() <= max_vertices)
            out.push_back(std::move(r));
    }
    return out;
}

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"waterfall", "cor48", "thm49", "thm55", "thm73", "lemma41", "order"};
    return names;
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg)
{
    if (name == "waterfall")
        return waterfall_suite(cfg);
    if (name == "cor48")
        return cor48_suite(cfg);
    if (name == "thm49")
        return thm49_suite(cfg);
    if (name == "thm55")
        return thm55_suite(cfg);
    if (name == "thm73")
        return thm73_suite(cfg);
    if (name == "lemma41")
        return lemma41_suite(cfg);
    if (name == "order")
        return order_suite(cfg);
    throw InputError("unknown suite '" + name + "'");
}

SuiteReport waterfall_suite(const SuiteConfig& cfg)
{
    SuiteReport rep{"waterfall"};

    auto compare = [&](const PathInstance& p, const char* origin) {
        ++rep.cases;
        const bool criterion = waterfall_choosable_check(p);
        const auto sol = path_solve_oracle(p);
        if (criterion != sol.has_value()) {
            rep.fail(std::string(origin) + ": amplitude criterion says " + (criterion ? "yes" : "no")
                + ", oracle disagrees: " + show(p));
            return;
        }
        if (sol && !verify_choice(p.graph(), p.lists, p.weights, *sol))
            rep.fail(std::string(origin) + ": oracle output fails verification: " + show(p));
        if (is_good_list(p) && p.lists.back().size() >= p.weights.back() && prefix_amplitude_check(p) != criterion)
            rep.fail(std::string(origin) + ": prefix criterion disagrees with the full one: " + show(p));
    };

    std::size_t exhaustive = 0;
    for_each_small_waterfall(4, 3, 8, [&](const PathInstance& p) {
        ++exhaustive;
        compare(p, "exhaustive");
    });
    rep.summary.push_back("exhaustive n<=4, sizes<=3, colors<=8: " + std::to_string(exhaustive) + " instances");

    std::mt19937_64 rng(cfg.seed);
    for (std::size_t t = 0; t < cfg.trials; ++t)
        compare(random_waterfall(8, 12, rng), "random");
    rep.summary.push_back("random waterfall n<=8, colors<=12: " + std::to_string(cfg.trials) + " instances");

    std::size_t feasible = 0;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        ++rep.cases;
        const auto p = random_good_path(7, 6, rng);
        const auto expected = path_solve_oracle(p).has_value();
        feasible += expected;
        const auto err = run_guarded([&] {
            const auto sim = waterfall_similar(p);
            bool sizes_kept = sim.instance.lists.size() == p.lists.size();
            for (std::size_t i = 0; sizes_kept && i < p.lists.size(); ++i)
                sizes_kept = sim.instance.lists[i].size() == p.lists[i].size();
            if (!is_waterfall(sim.instance) || !sizes_kept)
                rep.fail("similar list is not a size-preserving waterfall list: " + show(p));
            else if (path_solve_oracle(sim.instance).has_value() != expected)
                rep.fail("similar list changes the verdict: " + show(p));
            const auto direct = solve_good_path(p);
            if (direct.has_value() != expected)
                rep.fail("good-path solver disagrees with the oracle: " + show(p));
            else if (direct && !verify_choice(p.graph(), p.lists, p.weights, *direct))
                rep.fail("good-path solver output fails verification: " + show(p));
        });
        if (!err.empty())
            rep.fail("good list " + show(p) + ": " + err);
    }
    rep.summary.push_back("random good lists n<=7: " + std::to_string(cfg.trials) + " instances, "
        + std::to_string(feasible) + " choosable");
    return rep;
}

SuiteReport cor48_suite(const SuiteConfig& cfg)
{
    SuiteReport rep{"cor48"};
    std::mt19937_64 rng(cfg.seed);
    for (auto [b, e] : kBE) {
        const auto p = ab_from_be(b, e);
        const std::size_t base = even_threshold(b, e);
        for (std::size_t n : {base, base + 2}) {
            std::size_t ok = 0;
            for (std::size_t t = 0; t < cfg.trials; ++t) {
                ++rep.cases;
                const auto inst = random_cor48_instance(p, n, p.a + p.b, rng);
                const auto err = run_guarded([&] {
                    const auto c = cor48_solve(inst, p);
                    const auto check = verify_choice(inst.graph(), inst.lists, inst.weights, c);
                    if (!check)
                        throw InvariantViolation(check.describe());
                });
                if (err.empty())
                    ++ok;
                else
                    rep.fail("b=" + std::to_string(b) + " e=" + std::to_string(e) + " n=" + std::to_string(n)
                        + ": " + err + " on " + show(inst));
            }
            rep.summary.push_back("b=" + std::to_string(b) + " e=" + std::to_string(e) + " n=" + std::to_string(n)
                + ": " + std::to_string(ok) + "/" + std::to_string(cfg.trials) + " solved and verified");
        }
    }

    // Sharpness: below the threshold some conforming list must fail.
    for (auto [b, e] : {std::pair<std::size_t, std::size_t>{1, 1}, {2, 1}}) {
        const auto p = ab_from_be(b, e);
        for (std::size_t n = 1; n < even_threshold(b, e); ++n) {
            ++rep.cases;
            std::vector<std::size_t> sizes(n + 1, p.a);
            sizes.front() = sizes.back() = p.b;
            std::optional<PathInstance> bad;
            for_each_canonical_family(sizes, [&](std::span<const std::uint64_t> masks) {
                PathInstance inst(lists_from_family(n + 1, masks), constant_weight(n + 1, b));
                if (!path_solve_oracle(inst)) {
                    bad = std::move(inst);
                    return false;
                }
                return true;
            });
            const std::string label = "b=" + std::to_string(b) + " e=" + std::to_string(e) + " n=" + std::to_string(n);
            if (bad)
                rep.summary.push_back("sharpness " + label + ": non-choosable list " + show(*bad));
            else
                rep.fail("sharpness " + label + ": every conforming list is choosable");
        }
    }
    return rep;
}

SuiteReport thm49_suite(const SuiteConfig& cfg)
{
    SuiteReport rep{"thm49"};
    std::mt19937_64 rng(cfg.seed);
    for (auto [b, e] : kBE) {
        const auto p = ab_from_be(b, e);
        const std::size_t n = even_threshold(b, e);
        std::size_t ok = 0;
        for (std::size_t t = 0; t < cfg.trials; ++t) {
            ++rep.cases;
            const auto inst = random_1_reduced(p, n, p.a + p.b, rng);
            const auto err = run_guarded([&] {
                const auto c = thm49_solve(inst, p);
                const auto check = verify_choice(inst.graph(), inst.lists, inst.weights, c);
                if (!check)
                    throw InvariantViolation(check.describe());
            });
            if (err.empty())
                ++ok;
            else
                rep.fail("b=" + std::to_string(b) + " e=" + std::to_string(e) + ": " + err + " on " + show(inst));
        }
        rep.summary.push_back("b=" + std::to_string(b) + " e=" + std::to_string(e) + " n=" + std::to_string(n) + ": "
            + std::to_string(ok) + "/" + std::to_string(cfg.trials) + " solved and verified");
    }
    return rep;
}

SuiteReport thm55_suite(const SuiteConfig& cfg)
{
    constexpr std::size_t kLiftRegions = 20;
    constexpr std::size_t kListsPerRegion = 50;
    const ABParams p{5, 2, 1};
    const Rational x(5, 2);

    SuiteReport rep{"thm55"};
    const auto corpus = region_corpus(cfg.trials, cfg.seed);
    std::vector<ReductionTrace> traces;
    std::size_t empty = 0;
    for (const auto& r : corpus) {
        ++rep.cases;
        auto res = compute_core(r.graph(), x, CoreLevel::one, CoreVariant::ch);
        if (res.trace.core.empty())
            ++empty;
        else
            rep.fail("core of size " + std::to_string(res.trace.core.size()) + " on region " + show(r));
        traces.push_back(std::move(res.trace));
    }
    rep.summary.push_back("empty cores: " + std::to_string(empty) + "/" + std::to_string(corpus.size()) + " regions");
    rep.summary.push_back(handle_tally(traces));

    std::mt19937_64 rng(cfg.seed ^ 0x5bd1e995u);
    std::size_t lifted = 0;
    std::size_t attempted = 0;
    for (std::size_t i = 0; i < std::min(kLiftRegions, corpus.size()); ++i) {
        const auto& g = corpus[i].graph();
        if (!traces[i].core.empty())
            continue;
        for (std::size_t t = 0; t < kListsPerRegion; ++t) {
            ++rep.cases;
            ++attempted;
            const auto lists = random_lists(g.size(), p.a, p.a + t % 6, rng);
            const auto err = run_guarded([&] {
                lift_choosability(g, traces[i], lists, ChoiceAssignment(g.size()), p.b);
            });
            if (err.empty())
                ++lifted;
            else
                rep.fail("lift on region " + std::to_string(i) + ": " + err);
        }
    }
    rep.summary.push_back("lifted (5,2)-choices: " + std::to_string(lifted) + "/" + std::to_string(attempted));

    // Tiny regions: the exhaustive verdict must agree with the core.
    std::size_t agreed = 0;
    std::size_t tiny = 0;
    for (std::uint64_t s = 0; tiny < 12; ++s) {
        const auto r = generate_region(RegionShape::random_walk, 1 + s % 4, cfg.seed + s, true);
        if (r.size() > 4)
            continue;
        ++tiny;
        ++rep.cases;
        const bool core_empty = compute_core(r.graph(), x, CoreLevel::one, CoreVariant::ch).trace.core.empty();
        const auto verdict = is_ab_choosable(r.graph(), p, Exhaustive{});
        if (verdict.holds == core_empty)
            ++agreed;
        else
            rep.fail("exhaustive verdict disagrees with the core on " + show(r));
    }
    rep.summary.push_back(
        "exhaustive agreement on regions <= 4 vertices: " + std::to_string(agreed) + "/" + std::to_string(tiny));
    return rep;
}

SuiteReport thm73_suite(const SuiteConfig& cfg)
{
    constexpr std::size_t kColorableLimit = 40;
    const ABParams p{7, 3, 1};
    const Rational x(7, 3);

    SuiteReport rep{"thm73"};
    const auto corpus = region_corpus(cfg.trials, cfg.seed);
    std::vector<ReductionTrace> traces;
    std::size_t empty = 0;
    std::size_t colored = 0;
    std::size_t small = 0;
    for (const auto& r : corpus) {
        ++rep.cases;
        auto res = compute_core(r.graph(), x, CoreLevel::two, CoreVariant::co);
        if (res.trace.core.empty())
            ++empty;
        else
            rep.fail("co-core of size " + std::to_string(res.trace.core.size()) + " on region " + show(r));
        traces.push_back(std::move(res.trace));
        if (r.size() > kColorableLimit)
            continue;
        ++small;
        ++rep.cases;
        const auto col = is_ab_colorable(r.graph(), p);
        ColorSet palette(p.a);
        std::iota(palette.begin(), palette.end(), 0);
        const bool ok = col.colorable && col.witness
            && verify_choice(r.graph(), ColorList(r.size(), palette), constant_weight(r.size(), p.b), *col.witness);
        if (ok)
            ++colored;
        else
            rep.fail("no verified (7,3)-coloring on region " + show(r));
    }
    rep.summary.push_back("empty co-cores: " + std::to_string(empty) + "/" + std::to_string(corpus.size()) + " regions");
    rep.summary.push_back(handle_tally(traces));
    rep.summary.push_back("(7,3)-colorings with witness on regions <= 40 vertices: " + std::to_string(colored) + "/"
        + std::to_string(small));
    return rep;
}

SuiteReport lemma41_suite(const SuiteConfig& cfg)
{
    SuiteReport rep{"lemma41"};
    const auto corpus = region_corpus(cfg.trials, cfg.seed);
    std::size_t with_nodes = 0;
    std::size_t direct = 0;
    std::size_t mirrored = 0;
    std::size_t short_handles = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& r = corpus[i];
        ++rep.cases;
        const auto err = run_guarded([&] {
            const Graph& g = r.graph();
            bool has_node = false;
            for (VertexId v = 0; v < g.size(); ++v) {
                if (g.degree(v) > 3)
                    throw InvariantViolation("degree above 3");
                has_node = has_node || classify_node(r, v) != NodeKind::not_a_node;
            }
            if (auto gi = girth(g); gi && *gi < 6)
                throw InvariantViolation("girth " + std::to_string(*gi));
            if (!has_node)
                return;
            ++with_nodes;
            const LatticeRegion* subject = &r;
            const LatticeRegion mirror = mirror_region(r);
            if (cutting_node(r)) {
                ++direct;
            } else if (cutting_node(mirror)) {
                ++mirrored;
                subject = &mirror;
            } else {
                throw InvariantViolation("neither the region nor its mirror has a cutting node");
            }
            if (auto h = cutting_handle(*subject); h && h->length() <= 3)
                ++short_handles;
            if (!check_lemma41(*subject))
                throw InvariantViolation("short cutting handle without a low-degree continuation");
        });
        if (!err.empty())
            rep.fail("region " + std::to_string(i) + " (" + err + "): " + show(r));
    }
    rep.summary.push_back("regions with nodes: " + std::to_string(with_nodes) + "/" + std::to_string(corpus.size()));
    rep.summary.push_back("cutting node found directly: " + std::to_string(direct) + ", only after mirroring: "
        + std::to_string(mirrored));
    rep.summary.push_back("cutting handles of length <= 3: " + std::to_string(short_handles));
    return rep;
}

SuiteReport order_suite(const SuiteConfig& cfg)
{
    constexpr std::size_t kOrders = 10;
    SuiteReport rep{"order"};
    const auto corpus = region_corpus(cfg.trials, cfg.seed);
    std::size_t same = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        ++rep.cases;
        if (order_independence_probe(corpus[i].graph(), Rational(5, 2), kOrders, cfg.seed * 1000 + i))
            ++same;
        else
            rep.fail("randomized orders give different cores on region " + show(corpus[i]));
    }
    rep.summary.push_back("identical cores over " + std::to_string(kOrders) + " orders: " + std::to_string(same) + "/"
        + std::to_string(corpus.size()) + " regions");
    return rep;
}

} // namespace extcore
