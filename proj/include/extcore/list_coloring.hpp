#pragma once

#include "extcore/graph.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace extcore {

using Color = std::int32_t;

/// Sorted, duplicate-free set of colors.
using ColorSet = std::vector<Color>;
/// One color set per vertex.
using ColorList = std::vector<ColorSet>;
/// Demanded number of colors per vertex.
using WeightMap = std::vector<std::size_t>;
/// Chosen color set per vertex.
using ChoiceAssignment = std::vector<ColorSet>;

ColorSet make_color_set(std::initializer_list<Color> colors);
ColorSet make_color_set(std::vector<Color> colors);
ColorSet set_union(const ColorSet& a, const ColorSet& b);
ColorSet set_difference(const ColorSet& a, const ColorSet& b);
ColorSet set_intersection(const ColorSet& a, const ColorSet& b);
bool intersects(const ColorSet& a, const ColorSet& b);
bool is_subset(const ColorSet& sub, const ColorSet& super);

WeightMap constant_weight(std::size_t n, std::size_t w);

/// a = list size, b = demand per vertex, e = slack whose meaning depends on
/// the caller (a - 2b on path interiors, a - floor(x) b in core arguments).
struct ABParams {
    std::size_t a = 0;
    std::size_t b = 0;
    std::size_t e = 0;
};

void validate(const ABParams& p);

enum class ChoiceDefect {
    none,
    shape_mismatch, // lists/weights/choice not defined on every vertex
    not_a_subset,   // c(v) not inside L(v)
    wrong_size,     // |c(v)| != w(v)
    edge_conflict,  // c(u) and c(v) share a color on an edge uv
};

const char* to_string(ChoiceDefect d);

struct ChoiceCheck {
    ChoiceDefect defect = ChoiceDefect::none;
    VertexId vertex = kNoVertex;
    VertexId other = kNoVertex;

    bool ok() const { return defect == ChoiceDefect::none; }
    explicit operator bool() const { return ok(); }
    std::string describe() const;
};

ChoiceCheck verify_choice(const Graph& g, const ColorList& lists, const WeightMap& weights,
    const ChoiceAssignment& choice);

/// Exact backtracking search for an (L, w)-choice. Components are solved
/// independently; within one, the vertex with the fewest remaining candidate
/// subsets goes first (ties: smallest id).
std::optional<ChoiceAssignment> solve_list_weight(
    const Graph& g, const ColorList& lists, const WeightMap& weights);

struct ColorabilityResult {
    bool colorable = false;
    std::optional<ChoiceAssignment> witness;
};

/// (a,b)-colorability: a homomorphism into the graph of b-subsets of
/// {0..a-1} with disjointness as adjacency.
ColorabilityResult is_ab_colorable(const Graph& g, const ABParams& p);

struct Exhaustive {
    std::uint64_t budget = 10'000'000;
};

struct Sampled {
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    /// Colors are drawn from {0..universe-1}; defaults to a * n.
    std::optional<std::size_t> universe;
    /// Trial i always uses seed + i, so the verdict is independent of this.
    std::size_t workers = 1;
};

using CheckMode = std::variant<Exhaustive, Sampled>;

enum class VerdictMode { exhaustive, sampled, structural };

const char* to_string(VerdictMode m);

struct Verdict {
    bool holds = false;
    VerdictMode mode = VerdictMode::exhaustive;
    /// Lists (or list families) actually examined.
    std::uint64_t lists_checked = 0;
    std::optional<std::uint64_t> seed;
    std::optional<ColorList> counterexample;
    std::optional<ChoiceAssignment> witness;

    /// A sampled pass is evidence only; everything else is a proof.
    bool is_proof() const { return !(holds && mode == VerdictMode::sampled); }
};

Verdict is_ab_choosable(const Graph& g, const ABParams& p, const CheckMode& mode);

/// Lists have size a everywhere except |L(v0)| = b.
Verdict is_ab_free_choosable(const Graph& g, VertexId v0, const ABParams& p, const CheckMode& mode);

/// Canonical list families for per-vertex list sizes `sizes`: every family
/// of lists modulo color renaming is visited exactly once. A family is given
/// by one vertex bitmask per color (the vertices whose list holds it), masks
/// in non-increasing order. Requires sizes.size() <= 63. The visitor returns
/// false to stop early.
void for_each_canonical_family(std::span<const std::size_t> sizes,
    const std::function<bool(std::span<const std::uint64_t>)>& visit);

/// Number of canonical families, counting stops once it exceeds `cap`.
std::uint64_t count_canonical_families(std::span<const std::size_t> sizes, std::uint64_t cap);

/// Lists realized by a family: color i belongs to L(v) iff bit v of masks[i].
ColorList lists_from_family(std::size_t n, std::span<const std::uint64_t> masks);

} // namespace extcore
