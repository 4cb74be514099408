#include "doctest.h"

#include <random>
#include <sstream>

#include "geraf/eval.hpp"
#include "geraf/synthetic.hpp"
#include "test_util.hpp"

using namespace geraf;

TEST_CASE("brute force finds a dataset point at distance zero") {
    std::mt19937_64 gen(121);
    const Dataset data = testutil::random_dataset(gen, 50, 6);
    const auto res = brute_force_knn(data, data.point(17), 3);
    REQUIRE(res.neighbors.size() == 3);
    CHECK(res.neighbors[0].index == 17);
    CHECK(res.neighbors[0].sq_dist == 0.0);
    CHECK(std::find(res.tie_set.begin(), res.tie_set.end(), 17) != res.tie_set.end());
}

TEST_CASE("brute force reports complete tie sets") {
    // Two points symmetric about the query.
    const Dataset data(1, {-1.0f, 1.0f, 5.0f});
    const std::vector<float> q{0.0f};
    const auto res = brute_force_knn(data, q, 1);
    CHECK(res.tie_set == std::vector<index_t>{0, 1});
}

TEST_CASE("brute force agrees with a full-sort oracle") {
    std::mt19937_64 gen(122);
    const Dataset data = testutil::random_dataset(gen, 200, 8);
    for (int rep = 0; rep < 10; ++rep) {
        const auto q = testutil::random_floats(gen, 8, -1.0f, 1.0f);
        const auto res = brute_force_knn(data, q, 7);
        std::vector<std::pair<double, index_t>> all;
        for (index_t i = 0; i < data.size(); ++i)
            all.emplace_back(testutil::sq_dist_oracle(q, data.point(i)), i);
        std::sort(all.begin(), all.end());
        REQUIRE(res.neighbors.size() == 7);
        for (std::size_t i = 0; i < 7; ++i)
            CHECK(res.neighbors[i].sq_dist ==
                  doctest::Approx(all[i].first).epsilon(1e-10));
    }
}

TEST_CASE("ground truth computation is thread-count independent") {
    Rng rng(123);
    const Dataset data = generate_sphere(300, 10, rng);
    Rng qrng(124);
    const Dataset queries = generate_sphere(40, 10, qrng);
    const GroundTruth a = compute_ground_truth(data, queries, 3, 1);
    const GroundTruth b = compute_ground_truth(data, queries, 3, 4);
    CHECK(a.nearest_sq_dist == b.nearest_sq_dist);
    CHECK(a.tie_sets == b.tie_sets);
    CHECK(a.top_k == b.top_k);
}

TEST_CASE("self-queries in exact mode never miss") {
    std::mt19937_64 gen(125);
    const Dataset data = testutil::random_dataset(gen, 300, 8);
    ForestParams params;
    params.num_trees = 4;
    params.num_split_dims = 4;
    params.max_leaf_points = 4;
    params.seed = 5;
    const Forest forest = build_forest(data, params);

    Dataset queries(8, std::vector<float>(data.points().begin(),
                                          data.points().begin() + 50 * 8));
    const GroundTruth truth = compute_ground_truth(data, queries, 1);
    const auto budget = static_cast<std::uint32_t>(forest.total_leaves());
    const EvalReport report =
        evaluate(forest, queries, truth, 1, 0.0, {.max_leaf_checks = budget});
    CHECK(report.miss_pct == 0.0);
    CHECK(report.approx_miss_pct == 0.0);
    CHECK(report.num_queries == 50);
    CHECK(report.dist_comps_mean <= double(data.size()));
    CHECK(report.query_us_mean > 0.0);
}

TEST_CASE("miss accounting is per query") {
    std::mt19937_64 gen(126);
    const Dataset data = testutil::random_dataset(gen, 100, 4);
    ForestParams params;
    params.num_trees = 2;
    params.num_split_dims = 2;
    params.seed = 3;
    const Forest forest = build_forest(data, params);

    Dataset queries(4, std::vector<float>(data.points().begin(),
                                          data.points().begin() + 100 * 4));
    GroundTruth truth = compute_ground_truth(data, queries, 1);
    // Poison one query's truth: search now reports a "wrong" neighbor for
    // exactly 1 of 100 queries.
    truth.tie_sets[42] = {99999};
    truth.nearest_sq_dist[42] = -1.0;
    const auto budget = static_cast<std::uint32_t>(forest.total_leaves());
    const EvalReport report =
        evaluate(forest, queries, truth, 1, 0.0, {.max_leaf_checks = budget});
    CHECK(report.miss_pct == doctest::Approx(1.0));
}

TEST_CASE("approximate misses are bounded by misses") {
    Rng rng(127);
    const Dataset data = generate_klein_bottle(800, 8, rng);
    Rng qrng(128);
    const Dataset queries = generate_klein_bottle(100, 8, qrng);
    ForestParams params;
    params.num_trees = 2;
    params.num_split_dims = 4;
    params.max_leaf_points = 4;
    params.seed = 1;
    const Forest forest = build_forest(data, params);
    const GroundTruth truth = compute_ground_truth(data, queries, 1);
    for (double eps : {0.0, 0.1, 0.5, 0.9}) {
        const EvalReport report =
            evaluate(forest, queries, truth, 1, eps, {.max_leaf_checks = 8u});
        CHECK(report.approx_miss_pct <= report.miss_pct);
    }
}

TEST_CASE("csv row carries all fifteen columns") {
    const std::string header = report_csv_header();
    CHECK(std::count(header.begin(), header.end(), ',') == 14);

    ForestParams params;
    EvalReport report;
    report.miss_pct = 1.25;
    const std::string row = report_csv_row("klein", 100, 10, params, 0.5, report);
    CHECK(std::count(row.begin(), row.end(), ',') == 14);
    CHECK(row.substr(0, 6) == "klein,");
}
