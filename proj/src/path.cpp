#include "extcore/path.hpp"

#include "extcore/errors.hpp"
#include "extcore/rational.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace extcore {

PathInstance::PathInstance(ColorList l, WeightMap w)
    : lists(std::move(l))
    , weights(std::move(w))
{
    if (lists.empty() || lists.size() != weights.size())
        throw InputError("path instance needs matching, non-empty lists and weights");
}

Graph PathInstance::graph() const { return path_graph(lists.size()); }

bool is_waterfall(const PathInstance& p)
{
    const auto& L = p.lists;
    for (std::size_t i = 0; i < L.size(); ++i)
        for (std::size_t j = i + 2; j < L.size(); ++j)
            if (intersects(L[i], L[j]))
                return false;
    return true;
}

Amplitude amplitude(const PathInstance& p, std::size_t i, std::size_t j)
{
    if (i > j || j > p.length())
        throw InputError("amplitude indices out of range: (" + std::to_string(i) + ","
            + std::to_string(j) + ") on a path of length " + std::to_string(p.length()));
    Amplitude a{i, j, {}};
    for (std::size_t k = i; k <= j; ++k)
        a.value = set_union(a.value, p.lists[k]);
    return a;
}

bool is_good_list(const PathInstance& p)
{
    const auto n = p.length();
    for (std::size_t i = 1; i + 1 <= n; ++i)
        if (p.lists[i].size() < p.weights[i] + p.weights[i + 1])
            return false;
    return true;
}

bool waterfall_choosable_check(const PathInstance& p)
{
    if (!is_waterfall(p))
        throw PreconditionError("amplitude criterion applies to waterfall lists only");
    const auto n = p.length();
    for (std::size_t i = 0; i <= n; ++i) {
        ColorSet acc;
        std::size_t demand = 0;
        for (std::size_t j = i; j <= n; ++j) {
            acc = set_union(acc, p.lists[j]);
            demand += p.weights[j];
            if (acc.size() < demand)
                return false;
        }
    }
    return true;
}

bool prefix_amplitude_check(const PathInstance& p)
{
    const auto n = p.length();
    if (!is_waterfall(p) || !is_good_list(p) || p.lists[n].size() < p.weights[n])
        throw PreconditionError("prefix criterion needs a good waterfall list with |L(n)| >= w(n)");
    ColorSet acc;
    std::size_t demand = 0;
    for (std::size_t j = 0; j <= n; ++j) {
        acc = set_union(acc, p.lists[j]);
        demand += p.weights[j];
        if (acc.size() < demand)
            return false;
    }
    return true;
}

namespace {

std::vector<ColorSet> subsets_of_size(const ColorSet& s, std::size_t k)
{
    std::vector<ColorSet> out;
    if (k > s.size())
        return out;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    const std::size_t m = s.size();
    while (true) {
        ColorSet pick;
        pick.reserve(k);
        for (auto i : idx)
            pick.push_back(s[i]);
        out.push_back(std::move(pick));
        std::size_t pos = k;
        while (pos > 0 && idx[pos - 1] == m - k + pos - 1)
            --pos;
        if (pos == 0)
            break;
        ++idx[pos - 1];
        for (std::size_t j = pos; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
    return out;
}

} // namespace

std::optional<ChoiceAssignment> path_solve_oracle(const PathInstance& p)
{
    const auto n = p.length();
    for (std::size_t i = 0; i <= n; ++i)
        if (p.weights[i] > p.lists[i].size())
            return std::nullopt;

    // layer[i]: reachable candidate sets at vertex i; parent[i][k] indexes layer[i-1]
    std::vector<std::vector<ColorSet>> layer(n + 1);
    std::vector<std::vector<std::size_t>> parent(n + 1);
    layer[0] = subsets_of_size(p.lists[0], p.weights[0]);
    parent[0].assign(layer[0].size(), 0);
    for (std::size_t i = 1; i <= n; ++i) {
        for (auto& cand : subsets_of_size(p.lists[i], p.weights[i])) {
            for (std::size_t k = 0; k < layer[i - 1].size(); ++k) {
                if (!intersects(cand, layer[i - 1][k])) {
                    layer[i].push_back(std::move(cand));
                    parent[i].push_back(k);
                    break;
                }
            }
        }
        if (layer[i].empty())
            return std::nullopt;
    }
    ChoiceAssignment c(n + 1);
    std::size_t k = 0;
    for (std::size_t i = n + 1; i-- > 0;) {
        c[i] = layer[i][k];
        k = parent[i][k];
    }
    return c;
}

SimilarList waterfall_similar(const PathInstance& p)
{
    if (!is_good_list(p))
        throw PreconditionError("waterfall_similar needs a good list");
    SimilarList out{p, {}};
    auto& L = out.instance.lists;
    Color fresh = 0;
    for (const auto& l : L)
        if (!l.empty())
            fresh = std::max(fresh, static_cast<Color>(l.back() + 1));

    for (std::size_t i = 2; i < L.size(); ++i) {
        const ColorSet snapshot = L[i];
        for (Color c : snapshot) {
            bool shared = false;
            for (std::size_t j = 0; j + 2 <= i && !shared; ++j)
                shared = std::binary_search(L[j].begin(), L[j].end(), c);
            if (!shared)
                continue;
            const Color f = fresh++;
            auto it = out.origin.find(c);
            out.origin[f] = it == out.origin.end() ? c : it->second;
            for (std::size_t k = i; k < L.size(); ++k) {
                auto pos = std::lower_bound(L[k].begin(), L[k].end(), c);
                if (pos != L[k].end() && *pos == c) {
                    L[k].erase(pos);
                    L[k].insert(std::upper_bound(L[k].begin(), L[k].end(), f), f);
                }
            }
        }
    }
    return out;
}

std::optional<ChoiceAssignment> solve_good_path(const PathInstance& p)
{
    const auto n = p.length();
    const auto& L = p.lists;
    const auto& w = p.weights;
    if (!is_good_list(p) || L[n].size() < w[n])
        throw PreconditionError("solve_good_path needs a good list with |L(n)| >= w(n)");
    if (n == 0) {
        if (L[0].size() < w[0])
            return std::nullopt;
        return ChoiceAssignment{ColorSet(L[0].begin(), L[0].begin() + w[0])};
    }

    // Forward pass: constraint |c(i) & S[i]| <= T[i] for i >= 1.
    std::vector<ColorSet> S(n + 1);
    std::vector<std::int64_t> T(n + 1, 0);
    S[1] = set_intersection(L[0], L[1]);
    T[1] = static_cast<std::int64_t>(L[0].size()) - static_cast<std::int64_t>(w[0]);
    if (T[1] < 0)
        return std::nullopt;
    for (std::size_t i = 1; i < n; ++i) {
        if (T[i] >= static_cast<std::int64_t>(w[i]))
            continue; // c(i) is unconstrained, so S[i+1] stays empty
        const ColorSet out = set_difference(L[i], S[i]);
        S[i + 1] = set_intersection(out, L[i + 1]);
        T[i + 1] = static_cast<std::int64_t>(out.size()) - static_cast<std::int64_t>(w[i]) + T[i];
        if (T[i + 1] < 0)
            return std::nullopt;
    }

    // Backward pass: prefer colors outside S[i].
    ChoiceAssignment c(n + 1);
    ColorSet right;
    for (std::size_t i = n; i >= 1; --i) {
        const ColorSet avail = set_difference(L[i], right);
        ColorSet order = set_difference(avail, S[i]);
        const ColorSet inside = set_intersection(avail, S[i]);
        order.insert(order.end(), inside.begin(), inside.end());
        if (order.size() < w[i])
            throw InvariantViolation("good list left vertex " + std::to_string(i) + " short of colors");
        c[i] = make_color_set(std::vector<Color>(order.begin(), order.begin() + w[i]));
        if (static_cast<std::int64_t>(set_intersection(c[i], S[i]).size()) > T[i]) {
            if (i == n)
                return std::nullopt;
            throw InvariantViolation("budget exceeded at interior vertex " + std::to_string(i));
        }
        right = c[i];
    }
    const ColorSet avail = set_difference(L[0], right);
    if (avail.size() < w[0])
        throw InvariantViolation("budget pass admitted an infeasible left end");
    c[0] = ColorSet(avail.begin(), avail.begin() + w[0]);
    return c;
}

namespace {

void require(bool cond, const std::string& what)
{
    if (!cond)
        throw PreconditionError(what);
}

void require_constant_weight(const PathInstance& p, std::size_t b)
{
    for (auto w : p.weights)
        require(w == b, "weights must all equal b=" + std::to_string(b));
}

/// Certificate route shared by both solvers: the renamed waterfall list
/// must pass the prefix criterion before the exact good-list solver runs.
ChoiceAssignment solve_certified(const PathInstance& p)
{
    const auto similar = waterfall_similar(p);
    if (!prefix_amplitude_check(similar.instance))
        throw InvariantViolation("similar waterfall list fails the prefix amplitude criterion");
    auto c = solve_good_path(p);
    if (!c)
        throw InvariantViolation("good-list solver found no choice where one must exist");
    return *c;
}

} // namespace

ChoiceAssignment cor48_solve(const PathInstance& p, const ABParams& params)
{
    const auto b = params.b;
    const auto e = params.e;
    const auto n = p.length();
    require(b >= 1, "b must be >= 1");
    require(e >= 1, "e = 0 makes Even(2b/e) infinite");
    require(params.a == 2 * b + e, "a must equal 2b + e");
    require(n >= 1, "path must have length >= 1");
    require(p.lists[0].size() == b, "|L(0)| must equal b");
    require(p.lists[n].size() == b, "|L(n)| must equal b");
    for (std::size_t i = 1; i < n; ++i)
        require(p.lists[i].size() == params.a, "|L(" + std::to_string(i) + ")| must equal a");
    const auto threshold = *even_ceil(static_cast<std::int64_t>(2 * b), static_cast<std::int64_t>(e));
    require(static_cast<std::int64_t>(n) >= threshold,
        "length " + std::to_string(n) + " is below Even(2b/e)=" + std::to_string(threshold));
    require_constant_weight(p, b);

    auto c = solve_certified(p);
    if (!verify_choice(p.graph(), p.lists, p.weights, c))
        throw InvariantViolation("cor48_solve produced an invalid choice");
    return c;
}

bool check_1_reduced(const PathInstance& p, const ABParams& params)
{
    const auto n = p.length();
    require(n >= 2, "1-reduced lists need a path of length >= 2");
    const auto& L = p.lists;
    if (L[0].size() != params.b)
        return false;
    for (std::size_t i = 1; i + 2 <= n; ++i)
        if (L[i].size() != params.a)
            return false;
    if (L[n - 1].size() != params.b + params.e || L[n].size() != params.b + params.e)
        return false;
    return set_union(L[n - 1], L[n]).size() >= 2 * params.b;
}

ChoiceAssignment thm49_solve(const PathInstance& p, const ABParams& params)
{
    const auto b = params.b;
    const auto e = params.e;
    const auto n = p.length();
    require(b >= 1, "b must be >= 1");
    require(e >= 1, "e = 0 makes Even(2b/e) infinite");
    require(params.a == 2 * b + e, "a must equal 2b + e");
    require(check_1_reduced(p, params), "list is not 1-reduced");
    const auto threshold = *even_ceil(static_cast<std::int64_t>(2 * b), static_cast<std::int64_t>(e));
    require(static_cast<std::int64_t>(n) == threshold,
        "length " + std::to_string(n) + " differs from Even(2b/e)=" + std::to_string(threshold));
    require_constant_weight(p, b);

    // D: the b-e smallest colors of L(n) \ L(n-1); empty when e >= b.
    const ColorSet fresh_side = set_difference(p.lists[n], p.lists[n - 1]);
    const std::size_t d_size = b > e ? b - e : 0;
    if (fresh_side.size() < d_size)
        throw InvariantViolation("1-reduced list without room for the reserved set");
    const ColorSet reserved(fresh_side.begin(), fresh_side.begin() + d_size);

    PathInstance reduced = p;
    reduced.lists[n] = set_difference(p.lists[n], reserved);
    reduced.weights[n] = b - d_size;

    auto c = solve_certified(reduced);
    c[n] = set_union(c[n], reserved);
    if (!verify_choice(p.graph(), p.lists, p.weights, c))
        throw InvariantViolation("thm49_solve produced an invalid choice");
    return c;
}

} // namespace extcore
