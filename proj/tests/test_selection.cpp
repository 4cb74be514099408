#include "doctest.h"

#include <random>

#include "geraf/selection.hpp"
#include "geraf/types.hpp"
#include "test_util.hpp"

using namespace geraf;

TEST_CASE("median of hand-checked lists") {
    Rng rng(31);
    std::vector<float> single{5.0f};
    CHECK(quickselect_median(single, rng) == 5.0f);

    std::vector<float> odd{3.0f, 1.0f, 2.0f};
    CHECK(quickselect_median(odd, rng) == 2.0f); // rank 1 of (1, 2, 3)

    std::vector<float> even{4.0f, 1.0f, 3.0f, 2.0f};
    CHECK(quickselect_median(even, rng) == 3.0f); // rank 2 of (1, 2, 3, 4)
}

TEST_CASE("quickselect rejects bad input") {
    Rng rng(32);
    std::vector<float> empty;
    CHECK_THROWS_AS((void)quickselect_median(empty, rng), UsageError);
    std::vector<float> one{1.0f};
    CHECK_THROWS_AS((void)quickselect(one, 1, rng), UsageError);
}

TEST_CASE("quickselect matches the full-sort oracle") {
    Rng rng(33);
    std::mt19937_64 gen(34);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t size = 1 + gen() % 200;
        std::vector<float> values = testutil::random_floats(gen, size, -100.0f, 100.0f);
        // Inject duplicates half the time; ties must not confuse the rank.
        if (rep % 2 == 0)
            for (std::size_t i = 0; i < size; ++i)
                values[i] = float(int(values[i]) / 10);
        const std::size_t rank = gen() % size;
        const float want = testutil::sort_rank_oracle(values, rank);
        std::vector<float> scratch = values;
        CHECK(quickselect(scratch, rank, rng) == want);
        // Input order must not matter.
        std::shuffle(values.begin(), values.end(), gen);
        CHECK(quickselect(values, rank, rng) == want);
    }
}
