#include "geraf/variance.hpp"

#include <algorithm>
#include <numeric>

#include <omp.h>

#include "geraf/threads.hpp"
#include "geraf/types.hpp"

namespace geraf {

namespace {

// One-pass mean/moment recurrence for a block of dimensions [j0, j1):
//   alpha = 1/n; delta = x - mu; mu += alpha * delta; v += delta * (x - mu)
// Each dimension is independent, so blocking does not change any result.
void variance_block(const Dataset& data, std::uint32_t j0, std::uint32_t j1,
                    double* mu, double* v) {
    const std::uint32_t d = data.dim();
    const std::uint32_t n = data.size();
    std::fill(mu + j0, mu + j1, 0.0);
    std::fill(v + j0, v + j1, 0.0);
    const float* row = data.points().data();
    for (std::uint32_t i = 0; i < n; ++i, row += d) {
        const double alpha = 1.0 / double(i + 1);
        for (std::uint32_t j = j0; j < j1; ++j) {
            const double x = double(row[j]);
            const double delta = x - mu[j];
            mu[j] += alpha * delta;
            v[j] += delta * (x - mu[j]);
        }
    }
}

} // namespace

std::vector<double> compute_variances(const Dataset& data, int num_threads) {
    if (data.empty())
        throw UsageError("compute_variances: empty dataset");
    const std::uint32_t d = data.dim();
    const std::uint32_t n = data.size();
    std::vector<double> variances(d, 0.0);
    if (n < 2)
        return variances;

    std::vector<double> mu(d, 0.0);
    const int threads = std::min<int>(resolve_threads(num_threads), d);
    const bool parallel = threads > 1 && std::uint64_t(n) * d > (1u << 20);

    if (!parallel) {
        variance_block(data, 0, d, mu.data(), variances.data());
    } else {
#pragma omp parallel num_threads(threads)
        {
            const int tid = omp_get_thread_num();
            const int nt = omp_get_num_threads();
            const std::uint32_t chunk = (d + nt - 1) / nt;
            const std::uint32_t j0 = std::min<std::uint32_t>(d, tid * chunk);
            const std::uint32_t j1 = std::min<std::uint32_t>(d, j0 + chunk);
            if (j0 < j1)
                variance_block(data, j0, j1, mu.data(), variances.data());
        }
    }

    for (std::uint32_t j = 0; j < d; ++j)
        variances[j] /= double(n - 1);
    return variances;
}

std::vector<std::uint32_t> top_t_dimensions(std::span<const double> variances, std::uint32_t t) {
    const std::uint32_t d = static_cast<std::uint32_t>(variances.size());
    if (t < 1 || t > d)
        throw UsageError("top_t_dimensions: t must be in [1, d]");
    std::vector<std::uint32_t> order(d);
    std::iota(order.begin(), order.end(), 0u);
    std::partial_sort(order.begin(), order.begin() + t, order.end(),
                      [&](std::uint32_t a, std::uint32_t b) {
                          if (variances[a] != variances[b]) return variances[a] > variances[b];
                          return a < b;
                      });
    order.resize(t);
    return order;
}

} // namespace geraf
