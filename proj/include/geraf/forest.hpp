#pragma once

#include <cstdint>
#include <vector>

#include "geraf/dataset.hpp"
#include "geraf/tree.hpp"
#include "geraf/types.hpp"

namespace geraf {

/// m randomized trees over one shared dataset, plus the global set of
/// candidate split dimensions. Immutable once built; the dataset is not
/// owned and must outlive the forest.
struct Forest {
    std::vector<Tree> trees;
    const Dataset* dataset = nullptr;
    std::vector<std::uint32_t> top_dims;
    ForestParams params;

    std::uint32_t dim() const { return dataset->dim(); }
    std::uint32_t size() const { return dataset->size(); }

    std::uint64_t total_leaves() const {
        std::uint64_t total = 0;
        for (const Tree& t : trees) total += t.leaf_count();
        return total;
    }
};

/// Throws UsageError if the parameters are out of range for this dataset.
void validate_params(const ForestParams& params, const Dataset& data);

/// Computes variances and the top-t dimension set once, then builds the
/// m trees, possibly concurrently. Tree i is seeded from
/// derive_seed(params.seed, i), so the forest is identical for any thread
/// count or schedule.
Forest build_forest(const Dataset& data, const ForestParams& params, int num_threads = 0);

} // namespace geraf
