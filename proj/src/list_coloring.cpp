#include "extcore/list_coloring.hpp"

#include "extcore/errors.hpp"

#include <algorithm>
#include <bit>
#include <future>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <unordered_map>

namespace extcore {

ColorSet make_color_set(std::initializer_list<Color> colors)
{
    return make_color_set(std::vector<Color>(colors));
}

ColorSet make_color_set(std::vector<Color> colors)
{
    std::sort(colors.begin(), colors.end());
    colors.erase(std::unique(colors.begin(), colors.end()), colors.end());
    return colors;
}

ColorSet set_union(const ColorSet& a, const ColorSet& b)
{
    ColorSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

ColorSet set_difference(const ColorSet& a, const ColorSet& b)
{
    ColorSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

ColorSet set_intersection(const ColorSet& a, const ColorSet& b)
{
    ColorSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool intersects(const ColorSet& a, const ColorSet& b)
{
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j)
            ++i;
        else if (*j < *i)
            ++j;
        else
            return true;
    }
    return false;
}

bool is_subset(const ColorSet& sub, const ColorSet& super)
{
    return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

WeightMap constant_weight(std::size_t n, std::size_t w) { return WeightMap(n, w); }

void validate(const ABParams& p)
{
    if (p.b < 1 || p.a < p.b)
        throw PreconditionError("need a >= b >= 1, got a=" + std::to_string(p.a)
            + " b=" + std::to_string(p.b));
}

const char* to_string(ChoiceDefect d)
{
    switch (d) {
    case ChoiceDefect::none: return "ok";
    case ChoiceDefect::shape_mismatch: return "shape_mismatch";
    case ChoiceDefect::not_a_subset: return "not_a_subset";
    case ChoiceDefect::wrong_size: return "wrong_size";
    case ChoiceDefect::edge_conflict: return "edge_conflict";
    }
    return "?";
}

std::string ChoiceCheck::describe() const
{
    std::string s = to_string(defect);
    if (vertex != kNoVertex)
        s += " at vertex " + std::to_string(vertex);
    if (other != kNoVertex)
        s += " and " + std::to_string(other);
    return s;
}

ChoiceCheck verify_choice(const Graph& g, const ColorList& lists, const WeightMap& weights,
    const ChoiceAssignment& choice)
{
    const auto n = g.size();
    if (lists.size() != n || weights.size() != n || choice.size() != n)
        return {ChoiceDefect::shape_mismatch};
    for (VertexId v = 0; v < n; ++v) {
        if (!std::is_sorted(choice[v].begin(), choice[v].end())
            || std::adjacent_find(choice[v].begin(), choice[v].end()) != choice[v].end())
            return {ChoiceDefect::shape_mismatch, v};
        if (!is_subset(choice[v], lists[v]))
            return {ChoiceDefect::not_a_subset, v};
        if (choice[v].size() != weights[v])
            return {ChoiceDefect::wrong_size, v};
    }
    for (const auto& [u, v] : g.edges())
        if (intersects(choice[u], choice[v]))
            return {ChoiceDefect::edge_conflict, u, v};
    return {};
}

namespace {

using Bits = boost::dynamic_bitset<>;

constexpr std::uint64_t kSaturated = std::uint64_t{1} << 62;

std::uint64_t binomial(std::size_t n, std::size_t k)
{
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        // r * (n - k + i) / i stays integral at every step
        const auto num = static_cast<unsigned __int128>(r) * (n - k + i);
        const auto next = num / i;
        if (next >= kSaturated)
            return kSaturated;
        r = static_cast<std::uint64_t>(next);
    }
    return r;
}

/// Backtracking search for one connected component.
class ComponentSearch {
public:
    ComponentSearch(const Graph& g, std::span<const VertexId> comp, const ColorList& lists,
        const WeightMap& weights)
        : comp_(comp.begin(), comp.end())
    {
        std::unordered_map<VertexId, std::size_t> local;
        for (std::size_t i = 0; i < comp_.size(); ++i)
            local[comp_[i]] = i;
        std::map<Color, std::size_t> color_index;
        for (VertexId v : comp_)
            for (Color c : lists[v])
                color_index.emplace(c, 0);
        for (auto& [c, idx] : color_index) {
            idx = colors_.size();
            colors_.push_back(c);
        }
        const std::size_t k = colors_.size();
        nbr_.resize(comp_.size());
        avail_.assign(comp_.size(), Bits(k));
        chosen_.assign(comp_.size(), Bits(k));
        need_.resize(comp_.size());
        assigned_.assign(comp_.size(), 0);
        for (std::size_t i = 0; i < comp_.size(); ++i) {
            const VertexId v = comp_[i];
            for (VertexId u : g.neighbors(v))
                nbr_[i].push_back(local.at(u));
            for (Color c : lists[v])
                avail_[i].set(color_index.at(c));
            need_[i] = weights[v];
        }
    }

    bool run(ChoiceAssignment& out)
    {
        std::size_t open = comp_.size();
        for (std::size_t i = 0; i < comp_.size(); ++i) {
            if (avail_[i].count() < need_[i])
                return false;
            if (need_[i] == 0) {
                assigned_[i] = 1;
                --open;
            }
        }
        if (!search(open))
            return false;
        for (std::size_t i = 0; i < comp_.size(); ++i) {
            ColorSet s;
            for (auto c = chosen_[i].find_first(); c != Bits::npos; c = chosen_[i].find_next(c))
                s.push_back(colors_[c]);
            out[comp_[i]] = std::move(s);
        }
        return true;
    }

private:
    bool search(std::size_t open)
    {
        if (open == 0)
            return true;
        std::size_t best = comp_.size();
        std::uint64_t best_count = kSaturated + 1;
        for (std::size_t i = 0; i < comp_.size(); ++i) {
            if (assigned_[i])
                continue;
            const auto cnt = binomial(avail_[i].count(), need_[i]);
            if (cnt < best_count) {
                best_count = cnt;
                best = i;
            }
        }
        if (best_count == 0)
            return false;
        const std::size_t v = best;

        // Least-constraining colors first: those wanted by fewest open neighbors.
        std::vector<std::pair<std::size_t, std::size_t>> scored;
        for (auto c = avail_[v].find_first(); c != Bits::npos; c = avail_[v].find_next(c)) {
            std::size_t score = 0;
            for (auto u : nbr_[v])
                if (!assigned_[u] && avail_[u].test(c))
                    ++score;
            scored.emplace_back(score, c);
        }
        std::sort(scored.begin(), scored.end());

        const std::size_t k = need_[v];
        const std::size_t m = scored.size();
        std::vector<std::size_t> idx(k);
        std::iota(idx.begin(), idx.end(), 0);
        std::vector<std::pair<std::size_t, Bits>> trail;
        while (true) {
            Bits pick(colors_.size());
            for (auto i : idx)
                pick.set(scored[i].second);

            trail.clear();
            bool ok = true;
            for (auto u : nbr_[v]) {
                if (assigned_[u] || !avail_[u].intersects(pick))
                    continue;
                trail.emplace_back(u, avail_[u]);
                avail_[u] -= pick;
                if (avail_[u].count() < need_[u]) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                assigned_[v] = 1;
                chosen_[v] = pick;
                if (search(open - 1))
                    return true;
                assigned_[v] = 0;
            }
            for (auto it = trail.rbegin(); it != trail.rend(); ++it)
                avail_[it->first] = std::move(it->second);

            // next k-combination of 0..m-1
            std::size_t pos = k;
            while (pos > 0 && idx[pos - 1] == m - k + pos - 1)
                --pos;
            if (pos == 0)
                return false;
            ++idx[pos - 1];
            for (std::size_t j = pos; j < k; ++j)
                idx[j] = idx[j - 1] + 1;
        }
    }

    std::vector<VertexId> comp_;
    std::vector<Color> colors_;
    std::vector<std::vector<std::size_t>> nbr_;
    std::vector<Bits> avail_;
    std::vector<Bits> chosen_;
    std::vector<std::size_t> need_;
    std::vector<char> assigned_;
};

void check_shape(const Graph& g, const ColorList& lists, const WeightMap& weights)
{
    if (lists.size() != g.size() || weights.size() != g.size())
        throw InputError("lists/weights must cover all " + std::to_string(g.size()) + " vertices");
    for (const auto& l : lists)
        if (!std::is_sorted(l.begin(), l.end()) || std::adjacent_find(l.begin(), l.end()) != l.end())
            throw InputError("color lists must be sorted sets");
}

} // namespace

std::optional<ChoiceAssignment> solve_list_weight(
    const Graph& g, const ColorList& lists, const WeightMap& weights)
{
    check_shape(g, lists, weights);
    for (VertexId v = 0; v < g.size(); ++v)
        if (weights[v] > lists[v].size())
            return std::nullopt;
    ChoiceAssignment out(g.size());
    for (const auto& comp : connected_components(g)) {
        ComponentSearch search(g, comp, lists, weights);
        if (!search.run(out))
            return std::nullopt;
    }
    return out;
}

namespace {

// Above this many b-subsets the pairwise disjointness table gets too big and
// colorability falls back to the generic list solver.
constexpr std::uint64_t kMaxKneserVertices = 4096;

class KneserSearch {
public:
    KneserSearch(const Graph& g, std::size_t a, std::size_t b)
        : g_(g)
    {
        // b-subsets of {0..a-1} in lexicographic order; index 0 is {0..b-1}.
        std::vector<std::size_t> idx(b);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            std::uint64_t m = 0;
            for (auto i : idx)
                m |= std::uint64_t{1} << i;
            subsets_.push_back(m);
            std::size_t pos = b;
            while (pos > 0 && idx[pos - 1] == a - b + pos - 1)
                --pos;
            if (pos == 0)
                break;
            ++idx[pos - 1];
            for (std::size_t j = pos; j < b; ++j)
                idx[j] = idx[j - 1] + 1;
        }
        const auto k = subsets_.size();
        compat_.assign(k, Bits(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                if ((subsets_[i] & subsets_[j]) == 0)
                    compat_[i].set(j);
        dom_.assign(g.size(), Bits(k));
        pick_.assign(g.size(), 0);
        assigned_.assign(g.size(), 0);
    }

    bool run(ChoiceAssignment& out)
    {
        for (const auto& comp : connected_components(g_)) {
            for (VertexId v : comp)
                dom_[v].set();
            // Colors can be permuted freely, so one vertex per component is pinned.
            dom_[comp.front()].reset();
            dom_[comp.front()].set(0);
            if (!search(comp, comp.size()))
                return false;
        }
        for (VertexId v = 0; v < g_.size(); ++v) {
            ColorSet s;
            for (std::uint64_t m = subsets_[pick_[v]]; m != 0; m &= m - 1)
                s.push_back(static_cast<Color>(std::countr_zero(m)));
            out[v] = std::move(s);
        }
        return true;
    }

private:
    bool search(const std::vector<VertexId>& comp, std::size_t open)
    {
        if (open == 0)
            return true;
        VertexId v = kNoVertex;
        std::size_t best = 0;
        for (VertexId u : comp) {
            if (assigned_[u])
                continue;
            const auto c = dom_[u].count();
            if (v == kNoVertex || c < best) {
                v = u;
                best = c;
            }
        }
        if (best == 0)
            return false;
        std::vector<std::pair<VertexId, Bits>> trail;
        for (auto s = dom_[v].find_first(); s != Bits::npos; s = dom_[v].find_next(s)) {
            trail.clear();
            bool ok = true;
            for (VertexId u : g_.neighbors(v)) {
                if (assigned_[u])
                    continue;
                trail.emplace_back(u, dom_[u]);
                dom_[u] &= compat_[s];
                if (dom_[u].none()) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                assigned_[v] = 1;
                pick_[v] = s;
                if (search(comp, open - 1))
                    return true;
                assigned_[v] = 0;
            }
            for (auto it = trail.rbegin(); it != trail.rend(); ++it)
                dom_[it->first] = std::move(it->second);
        }
        return false;
    }

    const Graph& g_;
    std::vector<std::uint64_t> subsets_;
    std::vector<Bits> compat_;
    std::vector<Bits> dom_;
    std::vector<std::size_t> pick_;
    std::vector<char> assigned_;
};

} // namespace

ColorabilityResult is_ab_colorable(const Graph& g, const ABParams& p)
{
    validate(p);
    ChoiceAssignment witness(g.size());
    bool ok = false;
    if (p.a <= 63 && binomial(p.a, p.b) <= kMaxKneserVertices) {
        KneserSearch search(g, p.a, p.b);
        ok = search.run(witness);
    } else {
        ColorSet all(p.a);
        std::iota(all.begin(), all.end(), 0);
        auto sol = solve_list_weight(g, ColorList(g.size(), all), constant_weight(g.size(), p.b));
        if (sol) {
            ok = true;
            witness = std::move(*sol);
        }
    }
    if (!ok)
        return {false, std::nullopt};
    return {true, std::move(witness)};
}

const char* to_string(VerdictMode m)
{
    switch (m) {
    case VerdictMode::exhaustive: return "exhaustive";
    case VerdictMode::sampled: return "sampled";
    case VerdictMode::structural: return "structural";
    }
    return "?";
}

namespace {

void enumerate_families(std::span<const std::size_t> sizes, std::vector<std::size_t>& counts,
    std::vector<std::uint64_t>& masks, std::uint64_t prev,
    const std::function<bool(std::span<const std::uint64_t>)>& visit, bool& stop)
{
    const auto n = sizes.size();
    int h = -1;
    std::uint64_t full = 0;
    for (std::size_t v = 0; v < n; ++v) {
        if (counts[v] >= sizes[v])
            full |= std::uint64_t{1} << v;
        else
            h = static_cast<int>(v);
    }
    if (h < 0) {
        stop = !visit(masks);
        return;
    }
    // The next color must contain the highest unfinished vertex h: every
    // remaining color avoids the finished vertices, and h has the top bit.
    const std::uint64_t hbit = std::uint64_t{1} << h;
    const std::uint64_t allowed = ~full & ((hbit << 1) - 1);
    for (std::uint64_t m = allowed; m != 0 && !stop; m = (m - 1) & allowed) {
        if (!(m & hbit) || m > prev)
            continue;
        masks.push_back(m);
        for (std::uint64_t r = m; r != 0; r &= r - 1)
            ++counts[std::countr_zero(r)];
        enumerate_families(sizes, counts, masks, m, visit, stop);
        for (std::uint64_t r = m; r != 0; r &= r - 1)
            --counts[std::countr_zero(r)];
        masks.pop_back();
    }
}

} // namespace

void for_each_canonical_family(std::span<const std::size_t> sizes,
    const std::function<bool(std::span<const std::uint64_t>)>& visit)
{
    if (sizes.size() > 63)
        throw PreconditionError("canonical enumeration supports at most 63 vertices");
    std::vector<std::size_t> counts(sizes.size(), 0);
    std::vector<std::uint64_t> masks;
    bool stop = false;
    enumerate_families(sizes, counts, masks, ~std::uint64_t{0}, visit, stop);
}

std::uint64_t count_canonical_families(std::span<const std::size_t> sizes, std::uint64_t cap)
{
    std::uint64_t count = 0;
    for_each_canonical_family(sizes, [&](std::span<const std::uint64_t>) {
        ++count;
        return count <= cap;
    });
    return count;
}

ColorList lists_from_family(std::size_t n, std::span<const std::uint64_t> masks)
{
    ColorList lists(n);
    for (std::size_t c = 0; c < masks.size(); ++c)
        for (std::uint64_t r = masks[c]; r != 0; r &= r - 1)
            lists[std::countr_zero(r)].push_back(static_cast<Color>(c));
    return lists;
}

namespace {

Verdict check_exhaustive(const Graph& g, const std::vector<std::size_t>& sizes, std::size_t b,
    const Exhaustive& mode)
{
    const auto comps = connected_components(g);
    std::uint64_t total = 0;
    for (const auto& comp : comps) {
        if (comp.size() > 63)
            throw BudgetExceeded("component of " + std::to_string(comp.size())
                + " vertices is beyond exhaustive enumeration");
        std::vector<std::size_t> local_sizes;
        for (VertexId v : comp)
            local_sizes.push_back(sizes[v]);
        total += count_canonical_families(local_sizes, mode.budget);
        if (total > mode.budget)
            throw BudgetExceeded("more than " + std::to_string(mode.budget)
                + " canonical list families");
    }

    Verdict verdict;
    verdict.mode = VerdictMode::exhaustive;
    verdict.holds = true;
    // A graph is choosable iff each component is, so components are
    // enumerated separately.
    for (const auto& comp : comps) {
        const auto sub = induced_subgraph(g, comp);
        std::vector<std::size_t> local_sizes;
        for (VertexId v : comp)
            local_sizes.push_back(sizes[v]);
        const auto weights = constant_weight(comp.size(), b);
        std::optional<ColorList> bad;
        for_each_canonical_family(local_sizes, [&](std::span<const std::uint64_t> masks) {
            ++verdict.lists_checked;
            auto lists = lists_from_family(comp.size(), masks);
            if (!solve_list_weight(sub.graph, lists, weights)) {
                bad = std::move(lists);
                return false;
            }
            return true;
        });
        if (bad) {
            // Outside the failing component, lists use fresh private colors.
            ColorList full(g.size());
            Color next = 0;
            for (const auto& l : *bad)
                for (Color c : l)
                    next = std::max(next, static_cast<Color>(c + 1));
            for (VertexId v = 0; v < g.size(); ++v) {
                if (sub.from_original[v] != kNoVertex) {
                    full[v] = (*bad)[sub.from_original[v]];
                } else {
                    for (std::size_t i = 0; i < sizes[v]; ++i)
                        full[v].push_back(next++);
                }
            }
            verdict.holds = false;
            verdict.counterexample = std::move(full);
            return verdict;
        }
    }
    return verdict;
}

ColorList sample_lists(std::size_t n, const std::vector<std::size_t>& sizes, std::size_t universe,
    std::uint64_t trial_seed)
{
    std::mt19937_64 rng(trial_seed);
    ColorList lists(n);
    std::vector<Color> pool(universe);
    for (VertexId v = 0; v < n; ++v) {
        std::iota(pool.begin(), pool.end(), 0);
        // partial Fisher-Yates
        for (std::size_t i = 0; i < sizes[v]; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, universe - 1);
            std::swap(pool[i], pool[pick(rng)]);
        }
        lists[v] = make_color_set(std::vector<Color>(pool.begin(), pool.begin() + sizes[v]));
    }
    return lists;
}

Verdict check_sampled(const Graph& g, const std::vector<std::size_t>& sizes, const ABParams& p,
    const Sampled& mode)
{
    const std::size_t universe = mode.universe.value_or(p.a * std::max<std::size_t>(g.size(), 1));
    if (universe < p.a)
        throw PreconditionError("color universe smaller than the list size");
    const auto weights = constant_weight(g.size(), p.b);

    // Each worker scans trials w, w + W, ... and reports its first failure;
    // the smallest failing index wins, matching a sequential run.
    const std::size_t workers = std::max<std::size_t>(1, std::min(mode.workers, mode.trials));
    auto scan = [&](std::size_t start) -> std::optional<std::size_t> {
        for (std::size_t t = start; t < mode.trials; t += workers) {
            auto lists = sample_lists(g.size(), sizes, universe, mode.seed + t);
            if (!solve_list_weight(g, lists, weights))
                return t;
        }
        return std::nullopt;
    };
    std::optional<std::size_t> first_bad;
    if (workers == 1) {
        first_bad = scan(0);
    } else {
        std::vector<std::future<std::optional<std::size_t>>> jobs;
        for (std::size_t w = 0; w < workers; ++w)
            jobs.push_back(std::async(std::launch::async, scan, w));
        for (auto& j : jobs) {
            auto r = j.get();
            if (r && (!first_bad || *r < *first_bad))
                first_bad = r;
        }
    }

    Verdict verdict;
    verdict.mode = VerdictMode::sampled;
    verdict.seed = mode.seed;
    if (first_bad) {
        verdict.holds = false;
        verdict.lists_checked = *first_bad + 1;
        verdict.counterexample = sample_lists(g.size(), sizes, universe, mode.seed + *first_bad);
    } else {
        verdict.holds = true;
        verdict.lists_checked = mode.trials;
    }
    return verdict;
}

Verdict check_lists(const Graph& g, const std::vector<std::size_t>& sizes, const ABParams& p,
    const CheckMode& mode)
{
    if (const auto* ex = std::get_if<Exhaustive>(&mode))
        return check_exhaustive(g, sizes, p.b, *ex);
    return check_sampled(g, sizes, p, std::get<Sampled>(mode));
}

} // namespace

Verdict is_ab_choosable(const Graph& g, const ABParams& p, const CheckMode& mode)
{
    validate(p);
    return check_lists(g, std::vector<std::size_t>(g.size(), p.a), p, mode);
}

Verdict is_ab_free_choosable(const Graph& g, VertexId v0, const ABParams& p, const CheckMode& mode)
{
    validate(p);
    if (v0 >= g.size())
        throw InputError("free vertex " + std::to_string(v0) + " out of range");
    std::vector<std::size_t> sizes(g.size(), p.a);
    sizes[v0] = p.b;
    return check_lists(g, sizes, p, mode);
}

} // namespace extcore
