#include "extcore/lattice.hpp"

#include "extcore/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <set>

namespace extcore {

namespace {

constexpr std::array<LatticeCoord, 6> kOffsets{{{-1, 0}, {1, 0}, {-1, 1}, {0, 1}, {0, -1}, {1, -1}}};

constexpr unsigned bit(Direction d) { return 1u << static_cast<unsigned>(d); }

constexpr unsigned kLeftPattern = bit(Direction::left) | bit(Direction::top_right) | bit(Direction::bottom_right);
constexpr unsigned kRightPattern = bit(Direction::right) | bit(Direction::top_left) | bit(Direction::bottom_left);

} // namespace

std::array<LatticeCoord, 6> lattice_neighbors(LatticeCoord c)
{
    std::array<LatticeCoord, 6> out;
    for (std::size_t i = 0; i < 6; ++i)
        out[i] = {c.x + kOffsets[i].x, c.y + kOffsets[i].y};
    return out;
}

LatticeCoord step(LatticeCoord c, Direction d)
{
    const auto off = kOffsets[static_cast<std::size_t>(d)];
    return {c.x + off.x, c.y + off.y};
}

LatticeRegion::LatticeRegion(std::span<const LatticeCoord> coords)
    : coords_(coords.begin(), coords.end())
{
    std::sort(coords_.begin(), coords_.end(),
        [](LatticeCoord a, LatticeCoord b) { return std::tie(a.y, a.x) < std::tie(b.y, b.x); });
    coords_.erase(std::unique(coords_.begin(), coords_.end()), coords_.end());
    for (VertexId v = 0; v < coords_.size(); ++v)
        index_.emplace(coords_[v], v);

    std::vector<Edge> edges;
    for (VertexId v = 0; v < coords_.size(); ++v)
        for (const auto& c : lattice_neighbors(coords_[v]))
            if (auto it = index_.find(c); it != index_.end() && v < it->second)
                edges.emplace_back(v, it->second);
    graph_ = Graph(coords_.size(), edges);
    triangle_free_ = is_triangle_free(graph_);
}

std::optional<VertexId> LatticeRegion::vertex(LatticeCoord c) const
{
    auto it = index_.find(c);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

LatticeRegion build_region(std::span<const LatticeCoord> coords) { return LatticeRegion(coords); }

const char* to_string(NodeKind k)
{
    switch (k) {
    case NodeKind::not_a_node: return "not_a_node";
    case NodeKind::left: return "left";
    case NodeKind::right: return "right";
    }
    return "?";
}

NodeKind classify_node(const LatticeRegion& r, VertexId v)
{
    if (v >= r.size())
        throw InputError("vertex " + std::to_string(v) + " is not in the region");
    if (r.graph().degree(v) != 3)
        return NodeKind::not_a_node;
    unsigned pattern = 0;
    const auto around = lattice_neighbors(r.coord(v));
    for (unsigned i = 0; i < 6; ++i)
        if (r.contains(around[i]))
            pattern |= 1u << i;
    if (pattern == kLeftPattern)
        return NodeKind::left;
    if (pattern == kRightPattern)
        return NodeKind::right;
    if (r.triangle_free())
        throw InvariantViolation("degree-3 vertex " + std::to_string(v) + " with a mixed neighbor pattern");
    return NodeKind::not_a_node;
}

std::optional<VertexId> cutting_node(const LatticeRegion& r)
{
    std::optional<std::int64_t> top;
    for (VertexId v = 0; v < r.size(); ++v)
        if (classify_node(r, v) != NodeKind::not_a_node)
            top = std::max(top.value_or(r.coord(v).y), r.coord(v).y);
    if (!top)
        return std::nullopt;
    std::optional<VertexId> best;
    for (VertexId v = 0; v < r.size(); ++v)
        if (r.coord(v).y == *top && classify_node(r, v) == NodeKind::left)
            if (!best || r.coord(v).x > r.coord(*best).x)
                best = v;
    return best;
}

LatticeRegion mirror_region(const LatticeRegion& r)
{
    std::vector<LatticeCoord> out;
    out.reserve(r.size());
    for (const auto& c : r.coords())
        out.push_back({-c.x - c.y, c.y});
    return LatticeRegion(out);
}

std::optional<HandleDescriptor> cutting_handle(const LatticeRegion& r)
{
    const auto v0 = cutting_node(r);
    if (!v0)
        return std::nullopt;
    const auto v1 = r.vertex(step(r.coord(*v0), Direction::top_right));
    if (!v1)
        return std::nullopt;
    const Graph& g = r.graph();
    HandleDescriptor h;
    h.path = {*v0, *v1};
    while (g.degree(h.path.back()) == 2) {
        const auto nb = g.neighbors(h.path.back());
        const VertexId prev = h.path[h.path.size() - 2];
        const VertexId next = nb[0] == prev ? nb[1] : nb[0];
        if (next == *v0)
            return std::nullopt;
        h.path.push_back(next);
    }
    if (g.degree(h.path.back()) < 2)
        return std::nullopt;
    return h;
}

bool check_lemma41(const LatticeRegion& r)
{
    if (!r.triangle_free())
        throw PreconditionError("the cutting-handle lemma needs a triangle-free region");
    const auto h = cutting_handle(r);
    if (!h || h->length() > 3)
        return true;
    if (h->length() != 3)
        return false;
    const Graph& g = r.graph();
    const VertexId v2 = h->path[2];
    const VertexId v3 = h->path[3];
    for (VertexId u : g.neighbors(v3))
        if (u != v2 && g.degree(u) <= 2)
            return true;
    return false;
}

const char* to_string(RegionShape s)
{
    switch (s) {
    case RegionShape::random_walk: return "random_walk";
    case RegionShape::hex_patch: return "hex_patch";
    case RegionShape::parallelogram: return "parallelogram";
    }
    return "?";
}

RegionShape parse_region_shape(const std::string& s)
{
    if (s == "random_walk")
        return RegionShape::random_walk;
    if (s == "hex_patch")
        return RegionShape::hex_patch;
    if (s == "parallelogram")
        return RegionShape::parallelogram;
    throw InputError("unknown region shape '" + s + "'");
}

namespace {

std::int64_t residue3(LatticeCoord c) { return ((c.x - c.y) % 3 + 3) % 3; }

// Draws come straight from the engine so the walk is identical across
// standard libraries.
std::vector<LatticeCoord> random_walk_cells(std::size_t size, std::uint64_t seed)
{
    constexpr double kDefectRate = 0.05;
    std::mt19937_64 rng(seed);
    auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    LatticeCoord cur{1, 0};
    std::set<LatticeCoord> seen{cur};
    std::vector<LatticeCoord> cells{cur};
    const std::size_t max_steps = 100 * size;
    for (std::size_t s = 0; s < max_steps && cells.size() < size; ++s) {
        const LatticeCoord next = step(cur, static_cast<Direction>(rng() % 6));
        if (residue3(next) == 0 && unit() >= kDefectRate)
            continue;
        cur = next;
        if (seen.insert(cur).second)
            cells.push_back(cur);
    }
    return cells;
}

std::optional<VertexId> first_triangle_vertex(const Graph& g)
{
    for (VertexId u = 0; u < g.size(); ++u)
        for (VertexId v : g.neighbors(u))
            if (v > u && (g.neighbor_bits(u) & g.neighbor_bits(v)).any())
                return u;
    return std::nullopt;
}

} // namespace

LatticeRegion generate_region(RegionShape shape, std::size_t size, std::uint64_t seed, bool triangle_free)
{
    if (size < 1)
        throw InputError("region size must be at least 1");
    std::vector<LatticeCoord> cells;
    const auto k = static_cast<std::int64_t>(size);
    switch (shape) {
    case RegionShape::random_walk:
        cells = random_walk_cells(size, seed);
        break;
    case RegionShape::hex_patch:
        for (std::int64_t y = -k; y <= k; ++y)
            for (std::int64_t x = -k; x <= k; ++x)
                if (std::abs(x + y) <= k)
                    cells.push_back({x, y});
        break;
    case RegionShape::parallelogram:
        for (std::int64_t y = 0; y < k; ++y)
            for (std::int64_t x = 0; x < k; ++x)
                cells.push_back({x, y});
        break;
    }

    LatticeRegion region(cells);
    if (!triangle_free)
        return region;
    while (auto u = first_triangle_vertex(region.graph())) {
        auto remaining = region.coords();
        remaining.erase(remaining.begin() + *u);
        region = LatticeRegion(remaining);
    }
    return region;
}

} // namespace extcore
