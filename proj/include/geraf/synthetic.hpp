#pragma once

#include <cstdint>

#include "geraf/dataset.hpp"
#include "geraf/rng.hpp"

namespace geraf {

/// Points near the unit sphere in R^d: an isotropic Gaussian sample
/// normalized to unit length, then per-coordinate Gaussian noise of
/// standard deviation `noise_sigma` (0 gives the exact sphere).
Dataset generate_sphere(std::uint32_t n, std::uint32_t d, Rng& rng, double noise_sigma = 0.1);

/// Points near a Klein bottle embedded in R^4 and zero-padded to R^d
/// (d >= 4): angles theta, phi uniform on [0, 2pi), embedded as
///   ((R + r cos phi) cos theta, (R + r cos phi) sin theta,
///    r sin phi cos(theta/2), r sin phi sin(theta/2))
/// with R = 2, r = 1, then Gaussian noise of standard deviation
/// `noise_sigma` on all d coordinates.
Dataset generate_klein_bottle(std::uint32_t n, std::uint32_t d, Rng& rng,
                              double noise_sigma = 0.05);

} // namespace geraf
