#pragma once

#include <algorithm>
#include <cstddef>
#include <span>

namespace geraf {

/// Above this dimension the search kernel switches to the cached-norm
/// dot-product form, which is cheaper than the difference loop for long
/// vectors. The cutoff is a heuristic, not a correctness boundary.
inline constexpr std::size_t kDotKernelDim = 100; // use dot form when d > 100

namespace detail {

inline double sq_dist_raw(const float* a, const float* b, std::size_t d) noexcept {
    double acc = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        const double diff = double(a[j]) - double(b[j]);
        acc += diff * diff;
    }
    return acc;
}

inline double dot_raw(const float* a, const float* b, std::size_t d) noexcept {
    double acc = 0.0;
    for (std::size_t j = 0; j < d; ++j)
        acc += double(a[j]) * double(b[j]);
    return acc;
}

} // namespace detail

/// Squared Euclidean distance, accumulated in double.
double squared_distance(std::span<const float> a, std::span<const float> b);

/// ||q||^2 + ||x||^2 - 2 q.x, clamped at zero: cancellation between the
/// norm and dot terms can produce tiny negatives.
inline double squared_distance_via_dot(double q_sq_norm, double x_sq_norm,
                                       double dot_qx) noexcept {
    return std::max(0.0, q_sq_norm + x_sq_norm - 2.0 * dot_qx);
}

} // namespace geraf
