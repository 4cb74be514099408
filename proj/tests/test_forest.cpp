#include "doctest.h"

#include <random>

#include "geraf/forest.hpp"
#include "geraf/rng.hpp"
#include "test_util.hpp"

using namespace geraf;

TEST_CASE("single-tree forest equals a direct tree build") {
    std::mt19937_64 gen(51);
    const Dataset data = testutil::random_dataset(gen, 400, 6);
    ForestParams params;
    params.num_trees = 1;
    params.num_split_dims = 3;
    params.max_leaf_points = 5;
    params.seed = 99;
    const Forest forest = build_forest(data, params);
    const Tree direct = build_tree(data, forest.top_dims, params, derive_seed(99, 0));
    CHECK(testutil::trees_equal(forest.trees[0], direct));
}

TEST_CASE("forests are identical across thread counts") {
    std::mt19937_64 gen(52);
    const Dataset data = testutil::random_dataset(gen, 2000, 16);
    ForestParams params;
    params.num_trees = 6;
    params.num_split_dims = 8;
    params.max_leaf_points = 4;
    params.use_rotation = true;
    params.seed = 1234;
    const Forest one = build_forest(data, params, 1);
    const Forest four = build_forest(data, params, 4);
    CHECK(testutil::forests_equal(one, four));
}

TEST_CASE("trees of one forest differ from each other") {
    std::mt19937_64 gen(53);
    const Dataset data = testutil::random_dataset(gen, 1500, 10);
    ForestParams params;
    params.num_trees = 8;
    params.num_split_dims = 5;
    params.max_leaf_points = 8;
    params.seed = 7;
    const Forest forest = build_forest(data, params);
    for (std::size_t a = 0; a < forest.trees.size(); ++a)
        for (std::size_t b = a + 1; b < forest.trees.size(); ++b)
            CHECK_FALSE(testutil::trees_equal(forest.trees[a], forest.trees[b]));
}

TEST_CASE("every tree of a forest validates") {
    std::mt19937_64 gen(54);
    const Dataset data = testutil::random_dataset(gen, 800, 9);
    ForestParams params;
    params.num_trees = 4;
    params.num_split_dims = 4;
    params.max_leaf_points = 3;
    params.use_rotation = true;
    params.use_split_perturbation = true;
    params.seed = 11;
    const Forest forest = build_forest(data, params);
    CHECK(forest.top_dims.size() == 4);
    for (const Tree& tree : forest.trees) {
        const auto check = testutil::validate_tree(tree, data, params, forest.top_dims);
        INFO(check.error);
        CHECK(check.error.empty());
    }
}

TEST_CASE("build_forest rejects bad input") {
    const Dataset empty;
    ForestParams params;
    CHECK_THROWS_AS((void)build_forest(empty, params), UsageError);

    std::mt19937_64 gen(55);
    const Dataset data = testutil::random_dataset(gen, 10, 3);
    params.num_split_dims = 4; // t > d
    CHECK_THROWS_AS((void)build_forest(data, params), UsageError);
    params.num_split_dims = 2;
    params.num_trees = 0;
    CHECK_THROWS_AS((void)build_forest(data, params), UsageError);
    params.num_trees = 1;
    params.epsilon = -0.5;
    CHECK_THROWS_AS((void)build_forest(data, params), UsageError);
}
