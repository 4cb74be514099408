#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "geraf/types.hpp"

namespace geraf {

/// Immutable n x d row-major float matrix with cached per-point squared
/// norms. Norms are accumulated in double so the dot-product distance
/// kernel stays accurate up to d ~ 1e4.
class Dataset {
public:
    Dataset() = default;

    /// Takes ownership of `points` (size must be a multiple of dim) and
    /// precomputes the squared norms.
    Dataset(std::uint32_t dim, std::vector<float> points);

    std::uint32_t size() const { return n_; }
    std::uint32_t dim() const { return d_; }
    bool empty() const { return n_ == 0; }

    const float* row(index_t i) const { return points_.data() + std::size_t(i) * d_; }
    std::span<const float> point(index_t i) const { return {row(i), d_}; }
    double sq_norm(index_t i) const { return sq_norms_[i]; }

    const std::vector<float>& points() const { return points_; }
    const std::vector<double>& sq_norms() const { return sq_norms_; }

private:
    std::uint32_t n_ = 0;
    std::uint32_t d_ = 0;
    std::vector<float> points_;
    std::vector<double> sq_norms_;
};

} // namespace geraf
