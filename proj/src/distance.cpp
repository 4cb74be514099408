#include "geraf/distance.hpp"

#include "geraf/types.hpp"

namespace geraf {

double squared_distance(std::span<const float> a, std::span<const float> b) {
    if (a.size() != b.size())
        throw UsageError("squared_distance: dimension mismatch (" + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()) + ")");
    return detail::sq_dist_raw(a.data(), b.data(), a.size());
}

} // namespace geraf
