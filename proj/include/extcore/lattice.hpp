#pragma once

#include "extcore/core.hpp"
#include "extcore/graph.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace extcore {

/// Axial coordinates on the triangular lattice.
struct LatticeCoord {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend auto operator<=>(const LatticeCoord&, const LatticeCoord&) = default;
};

/// left, right, top-left, top-right, bottom-left, bottom-right
std::array<LatticeCoord, 6> lattice_neighbors(LatticeCoord c);

enum class Direction { left, right, top_left, top_right, bottom_left, bottom_right };

LatticeCoord step(LatticeCoord c, Direction d);

/// Induced subgraph of the lattice on a finite coordinate set. Vertex ids
/// follow the coordinates sorted by (y, x).
class LatticeRegion {
public:
    LatticeRegion() = default;
    explicit LatticeRegion(std::span<const LatticeCoord> coords);

    const Graph& graph() const { return graph_; }
    std::size_t size() const { return coords_.size(); }
    const std::vector<LatticeCoord>& coords() const { return coords_; }
    LatticeCoord coord(VertexId v) const { return coords_.at(v); }
    std::optional<VertexId> vertex(LatticeCoord c) const;
    bool contains(LatticeCoord c) const { return index_.count(c) != 0; }
    bool triangle_free() const { return triangle_free_; }

private:
    std::vector<LatticeCoord> coords_;
    std::map<LatticeCoord, VertexId> index_;
    Graph graph_;
    bool triangle_free_ = true;
};

LatticeRegion build_region(std::span<const LatticeCoord> coords);

enum class NodeKind { not_a_node, left, right };

const char* to_string(NodeKind k);

/// Degree-3 vertices are nodes. Left nodes see exactly left, top-right and
/// bottom-right; right nodes the mirror set. Throws InvariantViolation for
/// any other degree-3 pattern in a triangle-free region, and InputError for
/// an id outside the region.
NodeKind classify_node(const LatticeRegion& r, VertexId v);

/// Left node of maximal y among all nodes, rightmost in that row. None when
/// the topmost node row holds no left node.
std::optional<VertexId> cutting_node(const LatticeRegion& r);

/// Reflection (x, y) -> (-x - y, y); swaps left and right nodes.
LatticeRegion mirror_region(const LatticeRegion& r);

/// Degree-2 path leaving the cutting node through (x, y+1) and ending at the
/// first vertex of degree other than 2. None without a cutting node, when
/// (x, y+1) is absent, or when the walk dead-ends or returns to its start.
std::optional<HandleDescriptor> cutting_handle(const LatticeRegion& r);

/// For a triangle-free region: a cutting handle of length <= 3 must have
/// length exactly 3 and v_3 must have a neighbor v_4 != v_2 of degree <= 2.
/// Vacuously true without a short cutting handle.
bool check_lemma41(const LatticeRegion& r);

enum class RegionShape { random_walk, hex_patch, parallelogram };

const char* to_string(RegionShape s);
RegionShape parse_region_shape(const std::string& s);

/// Deterministic in (shape, size, seed). hex_patch: hex distance <= size
/// around the origin. parallelogram: size x size rhombus. random_walk: a
/// seeded walk of `size` distinct cells, biased towards the honeycomb
/// sublattice so that triangle-free repair leaves cycles behind. With
/// triangle_free set, the smallest id of the first triangle (lexicographic
/// in ids) is deleted until none remain.
LatticeRegion generate_region(RegionShape shape, std::size_t size, std::uint64_t seed, bool triangle_free);

} // namespace extcore
