#include "geraf/autoconfig.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "geraf/types.hpp"

namespace geraf {

std::uint32_t floor_pow2(std::uint64_t x) {
    if (x < 1)
        return 1;
    return static_cast<std::uint32_t>(std::bit_floor(std::min<std::uint64_t>(x, 1u << 31)));
}

std::uint32_t ceil_pow2(std::uint64_t x) {
    if (x <= 1)
        return 1;
    return static_cast<std::uint32_t>(std::bit_ceil(std::min<std::uint64_t>(x, 1u << 31)));
}

std::uint32_t round_pow2(double x) {
    if (!(x > 1.0))
        return 1;
    const std::uint32_t lo = floor_pow2(static_cast<std::uint64_t>(x));
    // Arithmetic midpoint decides; exactly halfway rounds up.
    return (x >= 1.5 * double(lo)) ? lo * 2 : lo;
}

ConfigInput make_config_input(const Dataset& data, double epsilon,
                              std::span<const double> variances) {
    if (data.empty())
        throw UsageError("make_config_input: empty dataset");
    if (variances.size() != data.dim())
        throw UsageError("make_config_input: variance vector does not match the dimension");

    ConfigInput input;
    input.n = data.size();
    input.d = data.dim();
    input.epsilon = epsilon;

    std::vector<double> sorted(variances.begin(), variances.end());
    std::partial_sort(sorted.begin(), sorted.begin() + std::min<std::size_t>(5, sorted.size()),
                      sorted.end(), std::greater<double>());
    for (std::size_t i = 0; i < 5; ++i) {
        // Pad by repeating the smallest available variance when d < 5.
        input.top_variances[i] = sorted[std::min(i, sorted.size() - 1)];
    }
    return input;
}

// ---------------------------------------------------------------------------
// Parameter policy. Piecewise-constant in n, d and epsilon, everything a
// power of two. Deliberately a plain constant block: swap the numbers to
// experiment with a different policy.
// ---------------------------------------------------------------------------
namespace policy {

// m: more trees for higher dimension ...
constexpr std::uint32_t kTreesSmallDim = 4;   // d <= 128
constexpr std::uint32_t kTreesMediumDim = 8;  // d <= 1024
constexpr std::uint32_t kTreesLargeDim = 16;  // d > 1024
// ... doubled when variance concentrates on a few coordinates (a top-1 /
// top-5 ratio above this threshold), since those profiles benefit from
// more independent split choices.
constexpr double kConcentrationRatio = 10.0;

// t: candidate split dimensions, capped by d.
constexpr std::uint32_t kSplitDimsSmall = 8;  // d <= 256
constexpr std::uint32_t kSplitDimsLarge = 16; // d > 256

// p: points per leaf near sqrt(n) (largest power of two below it), capped
// at 64 so large datasets keep leaf checks cheap, halved once per full
// step of epsilon. The relaxed-accuracy budget shrink itself comes from
// the 1/(1+eps) factor in the search loop, not from this table.
constexpr std::uint32_t kLeafCap = 64;
constexpr double kLeafEpsilonStep = 1.0;

// c: leaf-check budget covering n/64 leaves, at least 32, at most 1024;
// the cap bounds per-query work at scale.
constexpr std::uint64_t kCheckDivisor = 64;
constexpr std::uint64_t kCheckFloor = 32;
constexpr std::uint32_t kCheckCap = 1024;

} // namespace policy

ForestParams configure(const ConfigInput& input) {
    if (input.n < 1 || input.d < 1)
        throw UsageError("configure: n and d must be >= 1");
    if (!(input.epsilon >= 0.0))
        throw UsageError("configure: epsilon must be >= 0");

    ForestParams params; // randomization flags keep their defaults
    params.epsilon = input.epsilon;

    std::uint32_t m = input.d <= 128    ? policy::kTreesSmallDim
                      : input.d <= 1024 ? policy::kTreesMediumDim
                                        : policy::kTreesLargeDim;
    if (input.top_variances[0] > policy::kConcentrationRatio * input.top_variances[4])
        m *= 2;
    params.num_trees = m;

    const std::uint32_t t_raw =
        std::min(input.d, input.d <= 256 ? policy::kSplitDimsSmall : policy::kSplitDimsLarge);
    params.num_split_dims = floor_pow2(t_raw);

    std::uint32_t p = std::min(
        floor_pow2(static_cast<std::uint64_t>(std::sqrt(double(input.n)))), policy::kLeafCap);
    const auto halvings = static_cast<std::uint32_t>(input.epsilon / policy::kLeafEpsilonStep);
    p = std::max<std::uint32_t>(1, p >> std::min(halvings, 31u));
    params.max_leaf_points = std::min(p, floor_pow2(input.n));

    const std::uint32_t c = std::min(
        ceil_pow2(std::max(policy::kCheckFloor, input.n / policy::kCheckDivisor)),
        policy::kCheckCap);
    params.max_leaf_checks = std::min(c, floor_pow2(input.n));

    return params;
}

} // namespace geraf
