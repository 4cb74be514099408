#pragma once

#include <cstddef>
#include <span>

#include "geraf/rng.hpp"

namespace geraf {

/// Element of 0-based `rank` in sorted order, found by quickselect with
/// random pivots (expected linear time). Reorders `values`.
float quickselect(std::span<float> values, std::size_t rank, Rng& rng);

/// The split value used by median splits: rank floor(size / 2).
float quickselect_median(std::span<float> values, Rng& rng);

} // namespace geraf
