#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "geraf/dataset.hpp"
#include "geraf/types.hpp"

namespace geraf {

/// Largest power of two <= x (x >= 1).
std::uint32_t floor_pow2(std::uint64_t x);

/// Smallest power of two >= x.
std::uint32_t ceil_pow2(std::uint64_t x);

/// Nearest power of two, ties rounded upward; values below 1 map to 1.
std::uint32_t round_pow2(double x);

/// Everything the parameter policy looks at: size, dimension, requested
/// accuracy, and the five largest per-dimension variances (descending;
/// padded by repeating the smallest available one when d < 5).
struct ConfigInput {
    std::uint32_t n = 0;
    std::uint32_t d = 0;
    double epsilon = 0.0;
    std::array<double, 5> top_variances{};
};

ConfigInput make_config_input(const Dataset& data, double epsilon,
                              std::span<const double> variances);

/// Deterministic parameter policy: picks m, t, p, c as powers of two from
/// n, d, epsilon and the variance profile, clamped to feasibility
/// (t <= d, p <= n, c <= n, everything >= 1). The table lives in
/// autoconfig.cpp as a named constant block so experiments can swap it.
ForestParams configure(const ConfigInput& input);

} // namespace geraf
