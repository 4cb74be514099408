#include "doctest.h"

#include <cmath>
#include <random>

#include "geraf/householder.hpp"
#include "geraf/types.hpp"
#include "test_util.hpp"

using namespace geraf;

namespace {

double norm(std::span<const double> x) {
    double acc = 0.0;
    for (double v : x)
        acc += v * v;
    return std::sqrt(acc);
}

std::vector<double> random_doubles(Rng& rng, std::size_t count) {
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    std::vector<double> out(count);
    for (double& v : out)
        v = dist(rng);
    return out;
}

} // namespace

TEST_CASE("reflection across a coordinate hyperplane") {
    HouseholderTransform h{{1.0, 0.0}};
    const std::vector<double> x{3.0, 4.0};
    const auto y = householder_apply(h, x);
    CHECK(y[0] == doctest::Approx(-3.0));
    CHECK(y[1] == doctest::Approx(4.0));

    const std::vector<double> fixed{0.0, 5.0}; // orthogonal to u: unchanged
    const auto z = householder_apply(h, fixed);
    CHECK(z[0] == doctest::Approx(0.0));
    CHECK(z[1] == doctest::Approx(5.0));
}

TEST_CASE("reflection preserves norms and is an involution") {
    Rng rng(7);
    for (std::size_t d : {2, 50, 300}) {
        for (int rep = 0; rep < 20; ++rep) {
            const auto h = sample_unit_vector(rng, d);
            const auto x = random_doubles(rng, d);
            const auto px = householder_apply(h, x);
            CHECK(std::abs(norm(px) - norm(x)) <= 1e-9 * std::max(1.0, norm(x)));
            const auto back = householder_apply(h, px);
            for (std::size_t j = 0; j < d; ++j)
                CHECK(std::abs(back[j] - x[j]) <= 1e-9);
        }
    }
}

TEST_CASE("reflection preserves pairwise distances") {
    Rng rng(8);
    const std::size_t d = 64;
    for (int rep = 0; rep < 50; ++rep) {
        const auto h = sample_unit_vector(rng, d);
        const auto x = random_doubles(rng, d);
        const auto y = random_doubles(rng, d);
        const auto px = householder_apply(h, x);
        const auto py = householder_apply(h, y);
        double before = 0.0, after = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            before += (x[j] - y[j]) * (x[j] - y[j]);
            after += (px[j] - py[j]) * (px[j] - py[j]);
        }
        CHECK(std::abs(after - before) <= 1e-6 * std::max(1.0, before));
    }
}

TEST_CASE("sample_unit_vector basics") {
    Rng rng(9);
    SUBCASE("d = 1 gives a sign") {
        const auto h = sample_unit_vector(rng, 1);
        CHECK(std::abs(std::abs(h.u[0]) - 1.0) <= 1e-12);
    }
    SUBCASE("unit norm at any dimension") {
        for (std::size_t d : {2, 8, 100}) {
            const auto h = sample_unit_vector(rng, d);
            CHECK(std::abs(norm(h.u) - 1.0) <= 1e-9);
        }
    }
    SUBCASE("deterministic for a fixed seed") {
        Rng a(42), b(42);
        CHECK(sample_unit_vector(a, 8).u == sample_unit_vector(b, 8).u);
    }
    SUBCASE("dimension 0 is rejected") {
        CHECK_THROWS_AS((void)sample_unit_vector(rng, 0), UsageError);
    }
}

TEST_CASE("float-path reflection matches the double path to float precision") {
    Rng rng(10);
    const std::size_t d = 40;
    const auto h = sample_unit_vector(rng, d);
    const auto xf = testutil::random_floats(rng, d, -5.0f, 5.0f);
    std::vector<double> xd(xf.begin(), xf.end());
    const auto yf = householder_apply(h, std::span<const float>(xf));
    const auto yd = householder_apply(h, std::span<const double>(xd));
    for (std::size_t j = 0; j < d; ++j)
        CHECK(yf[j] == doctest::Approx(yd[j]).epsilon(1e-6));
}

TEST_CASE("householder_apply rejects mismatched dimensions") {
    HouseholderTransform h{{1.0, 0.0}};
    const std::vector<double> x{1.0, 2.0, 3.0};
    CHECK_THROWS_AS((void)householder_apply(h, std::span<const double>(x)), UsageError);
}
