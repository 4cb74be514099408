#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "geraf/dataset.hpp"

namespace geraf {

/// Per-dimension sample variance (divisor n - 1) in a single pass over the
/// points: the online mean/moment recurrence run on whole coordinate
/// vectors, with the division by n replaced by a multiply with 1/n.
/// Returns the zero vector when n < 2.
///
/// Threaded over dimension blocks; every dimension's recurrence is
/// self-contained, so the result is bit-identical for any thread count.
std::vector<double> compute_variances(const Dataset& data, int num_threads = 0);

/// Indices of the t largest variances, ordered by descending variance with
/// ties broken toward the lower index.
std::vector<std::uint32_t> top_t_dimensions(std::span<const double> variances, std::uint32_t t);

} // namespace geraf
