#include "geraf/householder.hpp"

#include <cmath>

#include "geraf/types.hpp"

namespace geraf {

std::vector<double> householder_apply(const HouseholderTransform& h, std::span<const double> x) {
    if (x.size() != h.dim())
        throw UsageError("householder_apply: dimension mismatch");
    double proj = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j)
        proj += h.u[j] * x[j];
    const double scale = 2.0 * proj;
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j)
        out[j] = x[j] - scale * h.u[j];
    return out;
}

std::vector<float> householder_apply(const HouseholderTransform& h, std::span<const float> x) {
    if (x.size() != h.dim())
        throw UsageError("householder_apply: dimension mismatch");
    std::vector<float> out(x.size());
    householder_apply_rows(h, x.data(), 1, x.size(), out.data());
    return out;
}

void householder_apply_rows(const HouseholderTransform& h, const float* points,
                            std::size_t n, std::size_t d, float* out) {
    for (std::size_t i = 0; i < n; ++i) {
        const float* x = points + i * d;
        float* y = out + i * d;
        double proj = 0.0;
        for (std::size_t j = 0; j < d; ++j)
            proj += h.u[j] * double(x[j]);
        const double scale = 2.0 * proj;
        for (std::size_t j = 0; j < d; ++j)
            y[j] = static_cast<float>(double(x[j]) - scale * h.u[j]);
    }
}

HouseholderTransform sample_unit_vector(Rng& rng, std::size_t dim) {
    if (dim == 0)
        throw UsageError("sample_unit_vector: dimension must be >= 1");
    std::normal_distribution<double> normal(0.0, 1.0);
    HouseholderTransform h;
    h.u.resize(dim);
    double norm = 0.0;
    do {
        double acc = 0.0;
        for (std::size_t j = 0; j < dim; ++j) {
            h.u[j] = normal(rng);
            acc += h.u[j] * h.u[j];
        }
        norm = std::sqrt(acc);
    } while (norm == 0.0);
    for (std::size_t j = 0; j < dim; ++j)
        h.u[j] /= norm;
    return h;
}

} // namespace geraf
