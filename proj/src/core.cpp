#include "extcore/core.hpp"

#include "extcore/errors.hpp"
#include "extcore/path.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <limits>
#include <numeric>
#include <set>

namespace extcore {

const char* to_string(HandleKind k)
{
    switch (k) {
    case HandleKind::plain: return "plain";
    case HandleKind::one_handle: return "one_handle";
    case HandleKind::two_handle: return "two_handle";
    case HandleKind::parity: return "parity";
    }
    return "?";
}

const char* to_string(CoreVariant v) { return v == CoreVariant::ch ? "ch" : "co"; }

HandleKind parse_handle_kind(const std::string& s)
{
    if (s == "plain")
        return HandleKind::plain;
    if (s == "one_handle")
        return HandleKind::one_handle;
    if (s == "two_handle")
        return HandleKind::two_handle;
    if (s == "parity")
        return HandleKind::parity;
    throw InputError("unknown handle kind '" + s + "'");
}

CoreVariant parse_core_variant(const std::string& s)
{
    if (s == "ch")
        return CoreVariant::ch;
    if (s == "co")
        return CoreVariant::co;
    throw InputError("unknown core variant '" + s + "'");
}

std::vector<VertexId> HandleDescriptor::interior() const
{
    if (path.size() < 3)
        return {};
    return {path.begin() + 1, path.end() - 1};
}

std::vector<VertexId> HandleDescriptor::recolored() const
{
    std::vector<VertexId> out;
    if (kind == HandleKind::two_handle) {
        out.push_back(*prev);
        out.push_back(path.front());
    }
    for (VertexId v : interior())
        out.push_back(v);
    if (kind == HandleKind::one_handle || kind == HandleKind::two_handle) {
        out.push_back(path.back());
        out.push_back(*next);
    }
    return out;
}

std::vector<VertexId> ReductionStep::removed() const
{
    if (is_vertex())
        return {std::get<VertexId>(payload)};
    return handle().interior();
}

std::vector<VertexId> ReductionStep::recolored() const
{
    if (is_vertex())
        return {std::get<VertexId>(payload)};
    return handle().recolored();
}

void validate_core_parameters(const Rational& x, CoreLevel level, CoreVariant variant)
{
    if (variant == CoreVariant::co && (x < Rational(2) || x >= Rational(3)))
        throw PreconditionError("parity handles are only defined for x in [2,3), got x=" + x.str());
    if (variant == CoreVariant::co && level != CoreLevel::two)
        throw PreconditionError("the co variant is defined on top of level 2");
}

namespace {

constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max();

/// The graph as it shrinks during a reduction: original ids, alive flags,
/// degrees among alive vertices.
class Working {
public:
    explicit Working(const Graph& g)
        : g_(g)
        , alive_(g.size(), 1)
        , deg_(g.size())
        , alive_count_(g.size())
    {
        for (VertexId v = 0; v < g.size(); ++v)
            deg_[v] = static_cast<std::int64_t>(g.degree(v));
    }

    const Graph& graph() const { return g_; }
    std::size_t size() const { return g_.size(); }
    bool alive(VertexId v) const { return v < g_.size() && alive_[v]; }
    std::int64_t degree(VertexId v) const { return deg_[v]; }
    std::size_t alive_count() const { return alive_count_; }
    bool adjacent(VertexId u, VertexId v) const { return g_.adjacent(u, v); }

    void remove(VertexId v)
    {
        alive_[v] = 0;
        --alive_count_;
        for (VertexId u : g_.neighbors(v))
            if (alive_[u])
                --deg_[u];
    }

    std::vector<VertexId> alive_neighbors(VertexId v) const
    {
        std::vector<VertexId> out;
        for (VertexId u : g_.neighbors(v))
            if (alive_[u])
                out.push_back(u);
        return out;
    }

    std::vector<VertexId> alive_vertices() const
    {
        std::vector<VertexId> out;
        for (VertexId v = 0; v < g_.size(); ++v)
            if (alive_[v])
                out.push_back(v);
        return out;
    }

private:
    const Graph& g_;
    std::vector<char> alive_;
    std::vector<std::int64_t> deg_;
    std::size_t alive_count_;
};

/// Position constraints for a fixed-length handle search: vertex p of the
/// sequence has degree <= max_deg[p]; positions in [chord_lo, chord_hi]
/// must carry no edges except between consecutive positions.
struct Pattern {
    HandleKind kind;
    std::vector<std::int64_t> max_deg;
    std::size_t chord_lo;
    std::size_t chord_hi;
};

Pattern make_pattern(HandleKind kind, std::size_t positions_minus_one, std::int64_t fx)
{
    const std::size_t m = positions_minus_one;
    Pattern p{kind, std::vector<std::int64_t>(m + 1, fx), 0, m};
    switch (kind) {
    case HandleKind::plain:
    case HandleKind::parity:
        p.max_deg.front() = kUnbounded;
        p.max_deg.back() = kUnbounded;
        p.chord_lo = 1;
        p.chord_hi = m - 1;
        break;
    case HandleKind::one_handle:
        // v_0 .. v_n, v_{n+1} with n = m - 1
        p.max_deg[0] = kUnbounded;
        p.max_deg[m - 1] = fx + 1;
        p.chord_lo = 1;
        p.chord_hi = m;
        break;
    case HandleKind::two_handle:
        // v_{-1}, v_0 .. v_n, v_{n+1} with n = m - 2
        p.max_deg[1] = fx + 1;
        p.max_deg[m - 1] = fx + 1;
        p.chord_lo = 0;
        p.chord_hi = m;
        break;
    }
    return p;
}

bool fits_position(const Working& w, const Pattern& pat, const std::vector<VertexId>& seq, VertexId u)
{
    const std::size_t p = seq.size();
    if (!w.alive(u) || std::find(seq.begin(), seq.end(), u) != seq.end())
        return false;
    if (w.degree(u) > pat.max_deg[p])
        return false;
    if (p >= pat.chord_lo && p <= pat.chord_hi)
        for (std::size_t q = pat.chord_lo; q + 2 <= p; ++q)
            if (w.adjacent(seq[q], u))
                return false;
    return true;
}

bool extend(const Working& w, const Pattern& pat, std::vector<VertexId>& seq)
{
    if (seq.size() == pat.max_deg.size())
        return true;
    for (VertexId u : w.graph().neighbors(seq.back())) {
        if (!fits_position(w, pat, seq, u))
            continue;
        seq.push_back(u);
        if (extend(w, pat, seq))
            return true;
        seq.pop_back();
    }
    return false;
}

HandleDescriptor descriptor_from_sequence(HandleKind kind, const std::vector<VertexId>& seq)
{
    HandleDescriptor h;
    h.kind = kind;
    switch (kind) {
    case HandleKind::plain:
    case HandleKind::parity:
        h.path = seq;
        break;
    case HandleKind::one_handle:
        h.path.assign(seq.begin(), seq.end() - 1);
        h.next = seq.back();
        break;
    case HandleKind::two_handle:
        h.prev = seq.front();
        h.path.assign(seq.begin() + 1, seq.end() - 1);
        h.next = seq.back();
        break;
    }
    return h;
}

std::vector<VertexId> sequence_of(const HandleDescriptor& h)
{
    std::vector<VertexId> seq;
    if (h.kind == HandleKind::two_handle && h.prev)
        seq.push_back(*h.prev);
    seq.insert(seq.end(), h.path.begin(), h.path.end());
    if ((h.kind == HandleKind::one_handle || h.kind == HandleKind::two_handle) && h.next)
        seq.push_back(*h.next);
    return seq;
}

std::optional<HandleDescriptor> find_fixed_handle(const Working& w, HandleKind kind,
    std::size_t positions_minus_one, std::int64_t fx, const std::vector<VertexId>& scan)
{
    const Pattern pat = make_pattern(kind, positions_minus_one, fx);
    std::vector<VertexId> seq;
    for (VertexId s : scan) {
        if (!fits_position(w, pat, seq, s))
            continue;
        seq.assign(1, s);
        if (extend(w, pat, seq))
            return descriptor_from_sequence(kind, seq);
    }
    return std::nullopt;
}

/// Shortest walk lengths to `target` split by parity, avoiding `blocked`.
std::vector<std::array<std::size_t, 2>> parity_distances(
    const Working& w, VertexId target, const std::vector<char>& blocked)
{
    constexpr auto inf = std::numeric_limits<std::size_t>::max();
    std::vector<std::array<std::size_t, 2>> dist(w.size(), {inf, inf});
    std::deque<std::pair<VertexId, int>> queue;
    dist[target][0] = 0;
    queue.emplace_back(target, 0);
    while (!queue.empty()) {
        auto [v, par] = queue.front();
        queue.pop_front();
        for (VertexId u : w.graph().neighbors(v)) {
            if (!w.alive(u) || blocked[u] || dist[u][1 - par] != inf)
                continue;
            dist[u][1 - par] = dist[v][par] + 1;
            queue.emplace_back(u, 1 - par);
        }
    }
    return dist;
}

std::optional<std::vector<VertexId>> find_parity_witness(const Working& w, const HandleDescriptor& h)
{
    const std::size_t n = h.length();
    const VertexId s = h.path.front();
    const VertexId t = h.path.back();
    std::vector<char> blocked(w.size(), 0);
    for (VertexId v : h.interior())
        blocked[v] = 1;
    const auto dist = parity_distances(w, t, blocked);
    constexpr auto inf = std::numeric_limits<std::size_t>::max();

    // Parity BFS only bounds walks; a DFS over simple paths makes it exact.
    std::vector<VertexId> path{s};
    std::vector<char> on_path(w.size(), 0);
    on_path[s] = 1;
    auto dfs = [&](auto&& self, VertexId v) -> bool {
        const std::size_t len = path.size() - 1;
        if (v == t)
            return len % 2 == n % 2;
        const std::size_t need = dist[v][(n - len) % 2];
        if (need == inf || len + need > n)
            return false;
        for (VertexId u : w.graph().neighbors(v)) {
            if (!w.alive(u) || blocked[u] || on_path[u])
                continue;
            path.push_back(u);
            on_path[u] = 1;
            if (self(self, u))
                return true;
            on_path[u] = 0;
            path.pop_back();
        }
        return false;
    };
    if (s == t || !w.alive(s) || !w.alive(t))
        return std::nullopt;
    if (dfs(dfs, s))
        return path;
    return std::nullopt;
}

std::optional<HandleDescriptor> find_parity_handle(
    const Working& w, std::int64_t fx, const std::vector<VertexId>& scan)
{
    // Variable-length search: every prefix of length >= 2 is a candidate
    // handle, and a prefix is extended only through vertices that can serve
    // as interior.
    std::vector<VertexId> seq;
    auto interior_ok = [&](VertexId u) {
        if (w.degree(u) > fx)
            return false;
        for (std::size_t q = 1; q + 2 < seq.size(); ++q)
            if (w.adjacent(seq[q], u))
                return false;
        return true;
    };
    std::optional<HandleDescriptor> found;
    auto dfs = [&](auto&& self) -> bool {
        const VertexId tail = seq.back();
        if (seq.size() >= 3) {
            HandleDescriptor h{HandleKind::parity, seq, std::nullopt, std::nullopt, {}};
            if (auto wit = find_parity_witness(w, h)) {
                h.witness = std::move(*wit);
                found = std::move(h);
                return true;
            }
        }
        if (seq.size() >= 2 && !interior_ok(tail))
            return false;
        for (VertexId u : w.graph().neighbors(tail)) {
            if (!w.alive(u) || std::find(seq.begin(), seq.end(), u) != seq.end())
                continue;
            seq.push_back(u);
            if (self(self))
                return true;
            seq.pop_back();
        }
        return false;
    };
    for (VertexId s : scan) {
        if (!w.alive(s))
            continue;
        seq.assign(1, s);
        if (dfs(dfs))
            return found;
    }
    return std::nullopt;
}

enum class Feature { low_degree, plain, one_handle, two_handle, parity };

std::optional<ReductionStep> find_in(const Working& w, const Rational& x, CoreLevel level,
    CoreVariant variant, RemovalOrder* order)
{
    const std::int64_t fx = x.floor();
    const auto threshold = handle_length_threshold(x);

    std::vector<Feature> kinds{Feature::low_degree};
    if (threshold) {
        kinds.push_back(Feature::plain);
        kinds.push_back(Feature::one_handle);
        if (level == CoreLevel::two)
            kinds.push_back(Feature::two_handle);
    }
    if (variant == CoreVariant::co)
        kinds.push_back(Feature::parity);

    std::vector<VertexId> scan = w.alive_vertices();
    if (order && order->randomized()) {
        std::shuffle(kinds.begin(), kinds.end(), order->rng());
        std::shuffle(scan.begin(), scan.end(), order->rng());
    }

    for (Feature f : kinds) {
        std::optional<HandleDescriptor> h;
        switch (f) {
        case Feature::low_degree:
            for (VertexId v : scan)
                if (w.degree(v) <= fx - 1)
                    return ReductionStep{v, {}};
            break;
        case Feature::plain:
            h = find_fixed_handle(w, HandleKind::plain, static_cast<std::size_t>(*threshold), fx, scan);
            break;
        case Feature::one_handle:
            h = find_fixed_handle(w, HandleKind::one_handle, static_cast<std::size_t>(*threshold), fx, scan);
            break;
        case Feature::two_handle:
            h = find_fixed_handle(w, HandleKind::two_handle, static_cast<std::size_t>(*threshold), fx, scan);
            break;
        case Feature::parity:
            h = find_parity_handle(w, fx, scan);
            break;
        }
        if (h)
            return ReductionStep{std::move(*h), {}};
    }
    return std::nullopt;
}

void fill_fixed_neighbors(const Working& w, ReductionStep& step)
{
    const auto rec = step.recolored();
    const std::set<VertexId> rec_set(rec.begin(), rec.end());
    step.fixed_neighbors.clear();
    for (VertexId v : rec) {
        auto& out = step.fixed_neighbors[v];
        for (VertexId u : w.alive_neighbors(v))
            if (!rec_set.count(u))
                out.push_back(u);
    }
}

void apply(Working& w, const ReductionStep& step)
{
    for (VertexId v : step.removed())
        w.remove(v);
}

} // namespace

std::optional<ReductionStep> find_removable(
    const Graph& g, const Rational& x, CoreLevel level, CoreVariant variant)
{
    validate_core_parameters(x, level, variant);
    Working w(g);
    auto step = find_in(w, x, level, variant, nullptr);
    if (step)
        fill_fixed_neighbors(w, *step);
    return step;
}

CoreResult compute_core(
    const Graph& g, const Rational& x, CoreLevel level, CoreVariant variant, RemovalOrder& order)
{
    validate_core_parameters(x, level, variant);
    Working w(g);
    ReductionTrace trace;
    trace.x = x;
    trace.level = level;
    trace.variant = variant;
    while (auto step = find_in(w, x, level, variant, &order)) {
        fill_fixed_neighbors(w, *step);
        apply(w, *step);
        trace.steps.push_back(std::move(*step));
    }
    trace.core = w.alive_vertices();
    auto sub = induced_subgraph(g, trace.core);
    return {std::move(sub), std::move(trace)};
}

CoreResult compute_core(const Graph& g, const Rational& x, CoreLevel level, CoreVariant variant)
{
    RemovalOrder order;
    return compute_core(g, x, level, variant, order);
}

namespace {

std::string step_label(std::size_t i) { return "trace step " + std::to_string(i) + ": "; }

void check_handle(const Working& w, const HandleDescriptor& h, const Rational& x, CoreLevel level,
    CoreVariant variant, std::size_t index)
{
    const std::int64_t fx = x.floor();
    const auto threshold = handle_length_threshold(x);
    const auto label = step_label(index);
    const std::size_t n = h.length();
    if (n < 2)
        throw InputError(label + "handle without interior");

    switch (h.kind) {
    case HandleKind::plain:
        if (!threshold || n < static_cast<std::size_t>(*threshold))
            throw InputError(label + "plain handle shorter than the threshold");
        break;
    case HandleKind::one_handle:
        if (!threshold || n + 1 != static_cast<std::size_t>(*threshold) || !h.next)
            throw InputError(label + "1-handle with the wrong length or no v_{n+1}");
        break;
    case HandleKind::two_handle:
        if (level != CoreLevel::two || !threshold || n + 2 != static_cast<std::size_t>(*threshold)
            || !h.next || !h.prev)
            throw InputError(label + "2-handle not allowed here or malformed");
        break;
    case HandleKind::parity:
        if (variant != CoreVariant::co)
            throw InputError(label + "parity handle outside the co variant");
        break;
    }

    const auto seq = sequence_of(h);
    const Pattern pat = make_pattern(h.kind, seq.size() - 1, fx);
    std::vector<VertexId> prefix;
    for (std::size_t p = 0; p < seq.size(); ++p) {
        if (p > 0 && !w.adjacent(seq[p - 1], seq[p]))
            throw InputError(label + "handle vertices are not consecutive neighbors");
        if (!fits_position(w, pat, prefix, seq[p]))
            throw InputError(label + "handle vertex " + std::to_string(seq[p])
                + " violates the degree, chord or presence conditions");
        prefix.push_back(seq[p]);
    }

    if (h.kind == HandleKind::parity) {
        std::set<VertexId> inner;
        for (VertexId v : h.interior())
            inner.insert(v);
        const auto& wit = h.witness;
        bool ok = wit.size() >= 2 && wit.front() == h.path.front() && wit.back() == h.path.back()
            && wit.size() - 1 <= n && (wit.size() - 1) % 2 == n % 2;
        for (std::size_t i = 0; ok && i < wit.size(); ++i) {
            ok = w.alive(wit[i]) && !inner.count(wit[i])
                && std::count(wit.begin(), wit.end(), wit[i]) == 1;
            if (ok && i > 0)
                ok = w.adjacent(wit[i - 1], wit[i]);
        }
        if (!ok)
            throw InputError(label + "parity handle without a valid alternate path");
    }
}

} // namespace

std::vector<ReductionStep> replay_trace(const Graph& g, const ReductionTrace& trace)
{
    validate_core_parameters(trace.x, trace.level, trace.variant);
    Working w(g);
    const std::int64_t fx = trace.x.floor();
    std::vector<ReductionStep> steps = trace.steps;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        auto& step = steps[i];
        if (step.is_vertex()) {
            const VertexId v = std::get<VertexId>(step.payload);
            if (!w.alive(v))
                throw InputError(step_label(i) + "vertex " + std::to_string(v) + " is not present");
            if (w.degree(v) > fx - 1)
                throw InputError(step_label(i) + "vertex " + std::to_string(v) + " has degree "
                    + std::to_string(w.degree(v)) + ", too high to remove");
        } else {
            for (VertexId v : sequence_of(step.handle()))
                if (v >= g.size())
                    throw InputError(step_label(i) + "vertex " + std::to_string(v) + " out of range");
            check_handle(w, step.handle(), trace.x, trace.level, trace.variant, i);
        }
        fill_fixed_neighbors(w, step);
        apply(w, step);
    }
    if (w.alive_vertices() != trace.core)
        throw InputError("trace does not reproduce its recorded core");
    return steps;
}

bool order_independence_probe(const Graph& g, const Rational& x, std::size_t trials, std::uint64_t seed)
{
    const auto reference = compute_core(g, x, CoreLevel::one, CoreVariant::ch).trace.core;
    for (std::size_t t = 0; t < trials; ++t) {
        RemovalOrder order(seed + t);
        if (compute_core(g, x, CoreLevel::one, CoreVariant::ch, order).trace.core != reference)
            return false;
    }
    return true;
}

std::optional<std::vector<VertexId>> parity_handle_witness(const Graph& g, const HandleDescriptor& h)
{
    if (h.path.size() < 3)
        throw PreconditionError("parity witness needs a handle with a non-empty interior");
    for (std::size_t i = 0; i < h.path.size(); ++i) {
        if (h.path[i] >= g.size())
            throw InputError("handle vertex out of range");
        if (i > 0 && !g.adjacent(h.path[i - 1], h.path[i]))
            throw PreconditionError("handle path is not a path of the graph");
    }
    Working w(g);
    return find_parity_witness(w, h);
}

ChoiceAssignment lift_choosability(const Graph& g, const ReductionTrace& trace,
    const ColorList& lists, const ChoiceAssignment& core_choice, std::size_t b)
{
    if (lists.size() != g.size() || core_choice.size() != g.size())
        throw InputError("lists and core choice must be indexed by all graph vertices");
    const auto steps = replay_trace(g, trace);

    ChoiceAssignment c(g.size());
    std::vector<char> colored(g.size(), 0);
    for (VertexId v : trace.core) {
        const auto& s = core_choice[v];
        if (s.size() != b || !is_subset(s, lists[v]))
            throw InputError("core choice at vertex " + std::to_string(v) + " is not a b-subset of its list");
        c[v] = s;
        colored[v] = 1;
    }
    for (VertexId u : trace.core)
        for (VertexId v : g.neighbors(u))
            if (u < v && colored[v] && intersects(c[u], c[v]))
                throw InputError("core choice conflicts on edge " + std::to_string(u) + "-" + std::to_string(v));

    auto residual = [&](VertexId v, const ReductionStep& step) {
        ColorSet r = lists[v];
        for (VertexId u : step.fixed_neighbors.at(v))
            r = set_difference(r, c[u]);
        return r;
    };

    for (std::size_t i = steps.size(); i-- > 0;) {
        const auto& step = steps[i];
        const auto rec = step.recolored();
        if (step.is_vertex()) {
            const VertexId v = rec.front();
            const auto r = residual(v, step);
            if (r.size() < b)
                throw InvariantViolation(step_label(i) + "vertex " + std::to_string(v) + " keeps only "
                    + std::to_string(r.size()) + " colors");
            c[v] = ColorSet(r.begin(), r.begin() + b);
        } else {
            ColorList residual_lists;
            for (VertexId v : rec)
                residual_lists.push_back(residual(v, step));
            const PathInstance inst(residual_lists, constant_weight(rec.size(), b));
            const auto sol = path_solve_oracle(inst);
            if (!sol)
                throw InvariantViolation(step_label(i) + std::string(to_string(step.handle().kind))
                    + " handle starting at vertex " + std::to_string(step.handle().path.front())
                    + " has no choice on its residual lists");
            for (std::size_t k = 0; k < rec.size(); ++k)
                c[rec[k]] = (*sol)[k];
        }
        for (VertexId v : rec)
            colored[v] = 1;
    }

    const auto check = verify_choice(g, lists, constant_weight(g.size(), b), c);
    if (!check)
        throw InvariantViolation("lifted choice fails verification: " + check.describe());
    return c;
}

} // namespace extcore
