#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "geraf/dataset.hpp"
#include "geraf/forest.hpp"
#include "geraf/search.hpp"
#include "geraf/types.hpp"

namespace geraf {

/// Exact k-NN of one query plus the complete set of indices tied at the
/// nearest distance (any of them counts as a correct first answer).
struct KnnResult {
    std::vector<Neighbor> neighbors; // ascending distance, exactly min(k, n)
    std::vector<index_t> tie_set;    // every index at exactly the minimal distance
};

/// Full scan with the direct difference kernel in double precision.
KnnResult brute_force_knn(const Dataset& data, std::span<const float> q, std::size_t k);

/// Exact answers for a whole query set; computed in parallel across
/// queries (each query's scan is the serial brute_force_knn).
struct GroundTruth {
    std::size_t k = 1;
    std::vector<double> nearest_sq_dist;       // per query
    std::vector<std::vector<index_t>> tie_sets; // per query
    std::vector<std::vector<index_t>> top_k;    // per query, min(k, n) indices
};

GroundTruth compute_ground_truth(const Dataset& data, const Dataset& queries, std::size_t k,
                                 int num_threads = 0);

/// Accuracy and cost summary for one parameter point.
///
/// miss_pct: queries whose first reported neighbor is outside the exact
/// tie set. approx_miss_pct: queries whose first reported neighbor is
/// farther than (1 + epsilon) times the exact nearest distance; a tie-set
/// member meets that bound with equality, so approx_miss_pct <= miss_pct.
struct EvalReport {
    double miss_pct = 0.0;
    double approx_miss_pct = 0.0;
    double recall_at_k = 0.0; // supplementary, fraction of exact top-k found
    double build_seconds = 0.0; // filled by the caller that built the forest
    double query_us_mean = 0.0;
    double query_us_median = 0.0;
    double leaf_checks_mean = 0.0;
    double dist_comps_mean = 0.0;
    std::size_t num_queries = 0;
};

/// Runs search over all queries and accumulates rates and counters.
/// Accuracy counters may be gathered on several threads; the timed pass
/// is always single-threaded (after one untimed warm-up query) so the
/// latency numbers stay stable.
EvalReport evaluate(const Forest& forest, const Dataset& queries, const GroundTruth& truth,
                    std::size_t k, double epsilon, const SearchOptions& options = {},
                    int num_threads = 0);

/// CSV row layout shared by the bench subcommand and the reports here.
std::string report_csv_header();
std::string report_csv_row(const std::string& dataset_name, std::uint32_t n, std::uint32_t d,
                           const ForestParams& params, double epsilon, const EvalReport& report);

} // namespace geraf
