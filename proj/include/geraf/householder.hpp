#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "geraf/rng.hpp"

namespace geraf {

/// Rank-one reflection x -> x - 2(u.x)u across the hyperplane normal to
/// unit vector u. Serves as the per-tree random isometry: applying it is
/// one dot product and one axpy, and only u needs to be stored.
struct HouseholderTransform {
    std::vector<double> u;

    std::size_t dim() const { return u.size(); }
};

/// Reflects x. Preserves norms and pairwise distances; applying it twice
/// restores the input.
std::vector<double> householder_apply(const HouseholderTransform& h, std::span<const double> x);

/// Same reflection on float storage: accumulates in double and rounds each
/// output coordinate to float. Build and search both go through this path,
/// so split comparisons see bit-identical coordinates.
std::vector<float> householder_apply(const HouseholderTransform& h, std::span<const float> x);

/// Reflects every row of an n x d row-major matrix into `out` (same shape).
void householder_apply_rows(const HouseholderTransform& h, const float* points,
                            std::size_t n, std::size_t d, float* out);

/// Unit vector with direction uniform on the sphere: i.i.d. Gaussian
/// coordinates, normalized. Redraws on an (essentially impossible)
/// all-zero sample.
HouseholderTransform sample_unit_vector(Rng& rng, std::size_t dim);

} // namespace geraf
