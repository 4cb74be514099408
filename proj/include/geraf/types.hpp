#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace geraf {

/// Point index into a Dataset. Forests address at most 2^32 - 1 points.
using index_t = std::uint32_t;

/// One search hit: dataset point index plus squared Euclidean distance.
struct Neighbor {
    index_t index = 0;
    double sq_dist = 0.0;
};

/// All build/search knobs for a forest.
struct ForestParams {
    std::uint32_t num_trees = 8;         // m: trees in the forest
    std::uint32_t num_split_dims = 8;    // t: split dimensions drawn from the top-variance set
    std::uint32_t max_leaf_points = 64;  // p: recursion stops at this leaf size
    std::uint32_t max_leaf_checks = 256; // c: leaf-check budget before the 1/(1+eps) scaling
    double epsilon = 0.0;                // approximation factor, >= 0
    bool use_rotation = false;           // random reflection per tree
    bool use_split_perturbation = false; // randomized split values
    bool use_shuffling = true;           // random point order per tree
    std::uint64_t seed = 0;              // master seed; per-tree seeds are derived

    bool operator==(const ForestParams&) const = default;
};

/// Caller violated a documented precondition (bad dimension, k < 1, ...).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A file failed to parse. `offset` is the byte position of the problem.
class FormatError : public std::runtime_error {
public:
    FormatError(const std::string& what, std::uint64_t offset)
        : std::runtime_error(what + " (byte offset " + std::to_string(offset) + ")"),
          offset_(offset) {}

    std::uint64_t offset() const { return offset_; }

private:
    std::uint64_t offset_;
};

} // namespace geraf
