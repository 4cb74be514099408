#include "geraf/forest.hpp"

#include <omp.h>

#include "geraf/rng.hpp"
#include "geraf/threads.hpp"
#include "geraf/variance.hpp"

namespace geraf {

void validate_params(const ForestParams& params, const Dataset& data) {
    if (data.empty())
        throw UsageError("build_forest: empty dataset");
    if (params.num_trees < 1)
        throw UsageError("build_forest: need at least one tree (m >= 1)");
    if (params.num_split_dims < 1 || params.num_split_dims > data.dim())
        throw UsageError("build_forest: split-dimension count t must be in [1, d]");
    if (params.max_leaf_points < 1)
        throw UsageError("build_forest: points per leaf p must be >= 1");
    if (params.max_leaf_checks < 1)
        throw UsageError("build_forest: leaf-check budget c must be >= 1");
    if (params.epsilon < 0.0)
        throw UsageError("build_forest: epsilon must be >= 0");
}

Forest build_forest(const Dataset& data, const ForestParams& params, int num_threads) {
    validate_params(params, data);

    Forest forest;
    forest.dataset = &data;
    forest.params = params;

    const std::vector<double> variances = compute_variances(data, num_threads);
    forest.top_dims = top_t_dimensions(variances, params.num_split_dims);

    const std::uint32_t m = params.num_trees;
    forest.trees.resize(m);
    const int threads = std::min<int>(resolve_threads(num_threads), m);

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::int64_t i = 0; i < std::int64_t(m); ++i) {
        forest.trees[i] =
            build_tree(data, forest.top_dims, params, derive_seed(params.seed, std::uint64_t(i)));
    }

    return forest;
}

} // namespace geraf
