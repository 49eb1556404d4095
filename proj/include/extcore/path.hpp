#pragma once

#include "extcore/list_coloring.hpp"

#include <map>
#include <optional>

namespace extcore {

/// Weighted path P_{n+1} on vertices 0..n; only consecutive vertices are adjacent.
struct PathInstance {
    ColorList lists;
    WeightMap weights;

    PathInstance() = default;
    /// Throws InputError unless lists and weights are non-empty and the same length.
    PathInstance(ColorList lists, WeightMap weights);

    /// Path length n (number of edges).
    std::size_t length() const { return lists.size() - 1; }
    Graph graph() const;
};

struct Amplitude {
    std::size_t i = 0;
    std::size_t j = 0;
    ColorSet value;
};

/// Non-consecutive lists are pairwise disjoint.
bool is_waterfall(const PathInstance& p);

/// Union of L(i..j). Throws InputError unless i <= j <= n.
Amplitude amplitude(const PathInstance& p, std::size_t i, std::size_t j);

/// |L(i)| >= w(i) + w(i+1) on every interior vertex 1..n-1.
bool is_good_list(const PathInstance& p);

/// Amplitude criterion over all intervals. Only meaningful for waterfall
/// lists; anything else is a PreconditionError.
bool waterfall_choosable_check(const PathInstance& p);

/// Prefix form of the amplitude criterion: |A(0,j)| >= w(0) + ... + w(j)
/// for every j. Requires a good waterfall list with |L(n)| >= w(n).
bool prefix_amplitude_check(const PathInstance& p);

/// Exact dynamic program over the chosen set at each vertex.
std::optional<ChoiceAssignment> path_solve_oracle(const PathInstance& p);

struct SimilarList {
    PathInstance instance;
    /// renamed color -> color of the input it stands for
    std::map<Color, Color> origin;
};

/// Renames colors shared with an earlier non-neighbor to fresh colors (the
/// rename carries forward along the path). Output is a waterfall list with
/// the same list sizes. Requires a good list.
SimilarList waterfall_similar(const PathInstance& p);

/// Exact constructive solver for good lists with |L(n)| >= w(n).
///
/// A left-to-right pass computes, for each vertex i >= 1, a set S_i of
/// colors and a budget t_i such that a left prefix stays completable iff
/// |c(i) & S_i| <= t_i. Goodness means every vertex can always be filled once
/// its right neighbor is fixed, so a right-to-left pass picking colors
/// outside S_i first succeeds exactly when every budget is non-negative.
std::optional<ChoiceAssignment> solve_good_path(const PathInstance& p);

/// Lists of sizes [b, a, ..., a, b] with a = 2b + e and n >= Even(2b/e).
/// Throws PreconditionError naming the violated constraint (e = 0 included).
ChoiceAssignment cor48_solve(const PathInstance& p, const ABParams& params);

/// Shape [b, a, ..., a, b+e, b+e] with |L(n-1) u L(n)| >= 2b.
bool check_1_reduced(const PathInstance& p, const ABParams& params);

/// Choice for a 1-reduced list at n = Even(2b/e): reserve D inside
/// L(n) \ L(n-1), solve the reduced instance, add D back at vertex n.
ChoiceAssignment thm49_solve(const PathInstance& p, const ABParams& params);

} // namespace extcore
