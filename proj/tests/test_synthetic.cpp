#include "doctest.h"

#include <cmath>

#include "geraf/synthetic.hpp"
#include "test_util.hpp"

using namespace geraf;

TEST_CASE("sphere generator") {
    SUBCASE("noiseless points sit on the unit sphere") {
        Rng rng(111);
        const Dataset data = generate_sphere(200, 16, rng, 0.0);
        for (index_t i = 0; i < data.size(); ++i)
            CHECK(std::abs(std::sqrt(data.sq_norm(i)) - 1.0) <= 1e-6);
    }
    SUBCASE("noisy norms match the moment calculation") {
        // E||x||^2 = 1 + sigma^2 d, so the mean norm for d = 100 and
        // sigma = 0.1 concentrates near sqrt(2).
        Rng rng(112);
        const Dataset data = generate_sphere(1000, 100, rng, 0.1);
        double mean = 0.0;
        for (index_t i = 0; i < data.size(); ++i)
            mean += std::sqrt(data.sq_norm(i));
        mean /= double(data.size());
        CHECK(mean >= std::sqrt(2.0) - 0.1);
        CHECK(mean <= std::sqrt(2.0) + 0.1);
    }
    SUBCASE("seed determinism") {
        Rng a(7), b(7);
        const Dataset x = generate_sphere(50, 10, a);
        const Dataset y = generate_sphere(50, 10, b);
        CHECK(x.points() == y.points());
    }
    SUBCASE("rejects d < 2") {
        Rng rng(113);
        CHECK_THROWS_AS((void)generate_sphere(10, 1, rng), UsageError);
    }
}

TEST_CASE("klein bottle generator") {
    SUBCASE("noiseless points satisfy the embedding identity") {
        // (sqrt(x1^2 + x2^2) - R)^2 + x3^2 + x4^2 = r^2 on the surface.
        Rng rng(114);
        const Dataset data = generate_klein_bottle(500, 12, rng, 0.0);
        for (index_t i = 0; i < data.size(); ++i) {
            const float* x = data.row(i);
            const double ring = std::sqrt(double(x[0]) * x[0] + double(x[1]) * x[1]);
            const double lhs = (ring - 2.0) * (ring - 2.0) + double(x[2]) * x[2] +
                               double(x[3]) * x[3];
            CHECK(std::abs(lhs - 1.0) <= 1e-6);
            for (std::uint32_t j = 4; j < 12; ++j)
                CHECK(x[j] == 0.0f); // zero padding
        }
    }
    SUBCASE("coordinates stay inside the embedding ranges") {
        Rng rng(115);
        const Dataset data = generate_klein_bottle(300, 4, rng, 0.0);
        for (index_t i = 0; i < data.size(); ++i) {
            const float* x = data.row(i);
            CHECK(std::abs(x[0]) <= 3.0f + 1e-6f);
            CHECK(std::abs(x[1]) <= 3.0f + 1e-6f);
            CHECK(std::abs(x[2]) <= 1.0f + 1e-6f);
            CHECK(std::abs(x[3]) <= 1.0f + 1e-6f);
        }
    }
    SUBCASE("seed determinism") {
        Rng a(9), b(9);
        CHECK(generate_klein_bottle(40, 6, a).points() ==
              generate_klein_bottle(40, 6, b).points());
    }
    SUBCASE("rejects d < 4") {
        Rng rng(116);
        CHECK_THROWS_AS((void)generate_klein_bottle(10, 3, rng), UsageError);
    }
}
