#include "geraf/selection.hpp"

#include <utility>

#include "geraf/types.hpp"

namespace geraf {

float quickselect(std::span<float> values, std::size_t rank, Rng& rng) {
    if (values.empty())
        throw UsageError("quickselect: empty input");
    if (rank >= values.size())
        throw UsageError("quickselect: rank out of range");

    std::size_t lo = 0;
    std::size_t hi = values.size(); // half-open [lo, hi)
    while (hi - lo > 1) {
        // Random pivot, three-way partition: < pivot | == pivot | > pivot.
        const std::size_t span = hi - lo;
        const float pivot = values[lo + rng() % span];
        std::size_t lt = lo, i = lo, gt = hi;
        while (i < gt) {
            if (values[i] < pivot)
                std::swap(values[lt++], values[i++]);
            else if (values[i] > pivot)
                std::swap(values[i], values[--gt]);
            else
                ++i;
        }
        if (rank < lt)
            hi = lt;
        else if (rank >= gt)
            lo = gt;
        else
            return pivot; // rank falls in the equal run
    }
    return values[lo];
}

float quickselect_median(std::span<float> values, Rng& rng) {
    return quickselect(values, values.size() / 2, rng);
}

} // namespace geraf
