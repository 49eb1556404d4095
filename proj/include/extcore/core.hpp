#pragma once

#include "extcore/graph.hpp"
#include "extcore/list_coloring.hpp"
#include "extcore/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace extcore {

enum class CoreLevel { one = 1, two = 2 };
enum class CoreVariant { ch, co };

enum class HandleKind { plain, one_handle, two_handle, parity };

const char* to_string(HandleKind k);
const char* to_string(CoreVariant v);
HandleKind parse_handle_kind(const std::string& s);
CoreVariant parse_core_variant(const std::string& s);

/// A handle in original vertex ids.
///
/// `path` is v_0..v_n. A 1-handle also carries v_{n+1} in `next`; a 2-handle
/// carries v_{n+1} and v_{-1} in `prev`. A parity handle records the
/// alternate v_0 -> v_n path that justified it.
struct HandleDescriptor {
    HandleKind kind = HandleKind::plain;
    std::vector<VertexId> path;
    std::optional<VertexId> next;
    std::optional<VertexId> prev;
    std::vector<VertexId> witness;

    std::size_t length() const { return path.empty() ? 0 : path.size() - 1; }
    /// v_1..v_{n-1}
    std::vector<VertexId> interior() const;
    /// Vertices whose colors are rebuilt when lifting over this handle, in
    /// path order: the interior, plus v_n, v_{n+1} for 1-handles, plus
    /// v_{-1}, v_0 for 2-handles.
    std::vector<VertexId> recolored() const;

    friend bool operator==(const HandleDescriptor&, const HandleDescriptor&) = default;
};

struct ReductionStep {
    std::variant<VertexId, HandleDescriptor> payload;
    /// For each recolored vertex: its neighbors that were present when the
    /// step happened and are not recolored themselves. Filled by
    /// compute_core and by replay_trace.
    std::map<VertexId, std::vector<VertexId>> fixed_neighbors;

    bool is_vertex() const { return std::holds_alternative<VertexId>(payload); }
    const HandleDescriptor& handle() const { return std::get<HandleDescriptor>(payload); }
    /// Vertices absent after the step.
    std::vector<VertexId> removed() const;
    std::vector<VertexId> recolored() const;
};

struct ReductionTrace {
    Rational x{2};
    CoreLevel level = CoreLevel::one;
    CoreVariant variant = CoreVariant::ch;
    std::vector<ReductionStep> steps;
    /// Surviving vertices, ascending, original ids.
    std::vector<VertexId> core;
};

struct CoreResult {
    Subgraph core;
    ReductionTrace trace;
};

/// Removal order for one reduction run. The default is the documented
/// deterministic priority; a randomized order shuffles both the feature
/// kinds and the vertex scan order at every step.
class RemovalOrder {
public:
    RemovalOrder() = default;
    explicit RemovalOrder(std::uint64_t seed)
        : rng_(seed)
        , randomized_(true)
    {
    }
    bool randomized() const { return randomized_; }
    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;
    bool randomized_ = false;
};

/// Throws PreconditionError for the co variant outside x in [2,3).
void validate_core_parameters(const Rational& x, CoreLevel level, CoreVariant variant);

/// First removable feature of g under the fixed priority: low-degree vertex,
/// plain handle of length Even(2/frac x), 1-handle one shorter, then (level 2)
/// 2-handle two shorter, then (co) parity handle. Vertices are scanned in
/// ascending id. Nothing removable means g is its own core.
std::optional<ReductionStep> find_removable(
    const Graph& g, const Rational& x, CoreLevel level, CoreVariant variant);

CoreResult compute_core(const Graph& g, const Rational& x, CoreLevel level, CoreVariant variant);
CoreResult compute_core(
    const Graph& g, const Rational& x, CoreLevel level, CoreVariant variant, RemovalOrder& order);

/// Re-applies the trace to g, re-validating every step against the graph
/// as it was at that moment. Returns the steps with fixed neighbors filled.
/// Throws InputError on any mismatch (including a wrong final core).
std::vector<ReductionStep> replay_trace(const Graph& g, const ReductionTrace& trace);

/// Level 1, ch only: runs `trials` randomized removal orders and reports
/// whether all of them end in the same core.
bool order_independence_probe(const Graph& g, const Rational& x, std::size_t trials, std::uint64_t seed);

/// Alternate v_0 -> v_n path of length m <= n with m = n (mod 2), avoiding
/// the handle interior. Returns the path or nullopt.
std::optional<std::vector<VertexId>> parity_handle_witness(const Graph& g, const HandleDescriptor& h);

/// Extends a b-choice of the core to all of g by undoing the trace in
/// reverse. `core_choice` is indexed by original ids; entries outside the
/// core are ignored. Throws InputError when the inputs do not fit together
/// and InvariantViolation (naming the step) when a residual instance has no
/// solution.
ChoiceAssignment lift_choosability(const Graph& g, const ReductionTrace& trace,
    const ColorList& lists, const ChoiceAssignment& core_choice, std::size_t b);

} // namespace extcore
