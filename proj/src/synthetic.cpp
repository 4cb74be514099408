#include "geraf/synthetic.hpp"

#include <cmath>
#include <numbers>

#include "geraf/types.hpp"

namespace geraf {

Dataset generate_sphere(std::uint32_t n, std::uint32_t d, Rng& rng, double noise_sigma) {
    if (n < 1 || d < 2)
        throw UsageError("generate_sphere: need n >= 1 and d >= 2");
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<float> points(std::size_t(n) * d);
    std::vector<double> raw(d);
    for (std::uint32_t i = 0; i < n; ++i) {
        double norm = 0.0;
        do {
            double acc = 0.0;
            for (std::uint32_t j = 0; j < d; ++j) {
                raw[j] = normal(rng);
                acc += raw[j] * raw[j];
            }
            norm = std::sqrt(acc);
        } while (norm == 0.0);
        for (std::uint32_t j = 0; j < d; ++j) {
            double v = raw[j] / norm;
            if (noise_sigma > 0.0)
                v += noise_sigma * normal(rng);
            points[std::size_t(i) * d + j] = static_cast<float>(v);
        }
    }
    return Dataset(d, std::move(points));
}

Dataset generate_klein_bottle(std::uint32_t n, std::uint32_t d, Rng& rng, double noise_sigma) {
    if (n < 1)
        throw UsageError("generate_klein_bottle: need n >= 1");
    if (d < 4)
        throw UsageError("generate_klein_bottle: the embedding needs d >= 4");

    constexpr double kMajorRadius = 2.0;
    constexpr double kMinorRadius = 1.0;
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::normal_distribution<double> normal(0.0, 1.0);

    std::vector<float> points(std::size_t(n) * d, 0.0f);
    for (std::uint32_t i = 0; i < n; ++i) {
        const double theta = angle(rng);
        const double phi = angle(rng);
        const double ring = kMajorRadius + kMinorRadius * std::cos(phi);
        double coords[4] = {
            ring * std::cos(theta),
            ring * std::sin(theta),
            kMinorRadius * std::sin(phi) * std::cos(theta / 2.0),
            kMinorRadius * std::sin(phi) * std::sin(theta / 2.0),
        };
        float* row = points.data() + std::size_t(i) * d;
        for (std::uint32_t j = 0; j < d; ++j) {
            double v = j < 4 ? coords[j] : 0.0;
            if (noise_sigma > 0.0)
                v += noise_sigma * normal(rng);
            row[j] = static_cast<float>(v);
        }
    }
    return Dataset(d, std::move(points));
}

} // namespace geraf
