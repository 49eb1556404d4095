#pragma once

#include "extcore/core.hpp"
#include "extcore/lattice.hpp"
#include "extcore/list_coloring.hpp"

#include "json.hpp"

#include <filesystem>
#include <string>

namespace extcore {

using Json = nlohmann::json;

// All readers throw InputError on malformed content.

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// {"n": N, "edges": [[u, v], ...]}
Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

/// {"lists": {"<v>": [colors...]}}; every vertex 0..n-1 must be present.
Json lists_to_json(const ColorList& lists);
ColorList lists_from_json(const Json& j, std::size_t n);

/// {"choice": {"<v>": [colors...]}}; absent vertices get an empty set.
Json choice_to_json(const ChoiceAssignment& c);
ChoiceAssignment choice_from_json(const Json& j, std::size_t n);

/// {"holds", "mode", "counterexample", "witness", "lists_checked", "seed"}
Json verdict_to_json(const Verdict& v);

Json trace_to_json(const ReductionTrace& t);
ReductionTrace trace_from_json(const Json& j);

/// One "x y" pair per line; '#' starts a comment. `header` lines are
/// written as comments first.
std::string region_to_text(const LatticeRegion& r, const std::vector<std::string>& header = {});
LatticeRegion region_from_text(const std::string& text);

/// {"coords": [[x, y], ...]} indexed by vertex id; together with the graph
/// JSON it reproduces the region.
Json region_sidecar(const LatticeRegion& r);
/// Rebuilds a region from a sidecar and checks it against the graph.
LatticeRegion region_from_sidecar(const Json& sidecar, const Graph& g);

} // namespace extcore
