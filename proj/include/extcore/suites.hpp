#pragma once

#include "extcore/lattice.hpp"
#include "extcore/path.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace extcore {

/// Outcome of one verification suite. `summary` holds one line per case
/// group; `problems` keeps the first few failures verbatim.
struct SuiteReport {
    explicit SuiteReport(std::string name = {})
        : suite(std::move(name))
    {
    }

    std::string suite;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::vector<std::string> summary;
    std::vector<std::string> problems;

    bool passed() const { return failures == 0; }
    void fail(std::string what);
};

struct SuiteConfig {
    std::size_t trials = 100;
    std::uint64_t seed = 1;
};

const std::vector<std::string>& suite_names();

/// Dispatches on the suite name; throws InputError for an unknown one.
SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg);

SuiteReport waterfall_suite(const SuiteConfig& cfg);
SuiteReport cor48_suite(const SuiteConfig& cfg);
SuiteReport thm49_suite(const SuiteConfig& cfg);
SuiteReport thm55_suite(const SuiteConfig& cfg);
SuiteReport thm73_suite(const SuiteConfig& cfg);
SuiteReport lemma41_suite(const SuiteConfig& cfg);
SuiteReport order_suite(const SuiteConfig& cfg);

// Instance generators shared by the suites and the tests. All randomness
// flows from the given engine, drawn directly so results do not depend on
// the standard library's distributions.

ColorSet random_subset(std::size_t k, std::size_t universe, std::mt19937_64& rng);
ColorList random_lists(std::size_t n, std::size_t size, std::size_t universe, std::mt19937_64& rng);

/// Canonical waterfall instance: consecutive lists share overlaps[i-1]
/// colors, everything else is private. Colors are 0, 1, ... in path order.
PathInstance waterfall_instance(const std::vector<std::size_t>& sizes,
    const std::vector<std::size_t>& overlaps, const WeightMap& weights);

/// Every waterfall instance up to color renaming with path length in
/// [1, max_n], list sizes in [1, max_size], weights in [1, |L(i)|] and at
/// most max_colors colors in total.
void for_each_small_waterfall(std::size_t max_n, std::size_t max_size, std::size_t max_colors,
    const std::function<void(const PathInstance&)>& visit);

PathInstance random_waterfall(std::size_t max_n, std::size_t max_colors, std::mt19937_64& rng);
/// Good list (not necessarily waterfall) with |L(n)| >= w(n).
PathInstance random_good_path(std::size_t max_n, std::size_t universe, std::mt19937_64& rng);
/// Sizes [b, a, ..., a, b] with a = 2b + e.
PathInstance random_cor48_instance(const ABParams& p, std::size_t n, std::size_t universe, std::mt19937_64& rng);
/// Rejection-samples a 1-reduced instance of length n.
PathInstance random_1_reduced(const ABParams& p, std::size_t n, std::size_t universe, std::mt19937_64& rng);

/// Seeded triangle-free random-walk regions with vertex counts in
/// [min_vertices, max_vertices].
std::vector<LatticeRegion> region_corpus(
    std::size_t count, std::uint64_t seed, std::size_t min_vertices = 10, std::size_t max_vertices = 80);

} // namespace extcore
