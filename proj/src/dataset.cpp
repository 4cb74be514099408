#include "geraf/dataset.hpp"

#include <utility>

namespace geraf {

Dataset::Dataset(std::uint32_t dim, std::vector<float> points)
    : d_(dim), points_(std::move(points)) {
    if (d_ == 0) {
        if (!points_.empty())
            throw UsageError("Dataset: dimension 0 with nonempty point data");
        return;
    }
    if (points_.size() % d_ != 0)
        throw UsageError("Dataset: point data size is not a multiple of the dimension");
    n_ = static_cast<std::uint32_t>(points_.size() / d_);

    sq_norms_.resize(n_);
    for (std::uint32_t i = 0; i < n_; ++i) {
        const float* x = row(i);
        double acc = 0.0;
        for (std::uint32_t j = 0; j < d_; ++j)
            acc += double(x[j]) * double(x[j]);
        sq_norms_[i] = acc;
    }
}

} // namespace geraf
