#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "geraf/dataset.hpp"
#include "geraf/householder.hpp"
#include "geraf/types.hpp"

namespace geraf {

inline constexpr std::uint32_t kLeafTag = 0xffffffffu;

/// One slot of the array-backed tree. Nodes are stored in preorder: a
/// split node's left child is the next slot and the right child index is
/// explicit. A leaf references a contiguous range of Tree::leaf_points.
struct TreeNode {
    std::uint32_t dim = kLeafTag; // split dimension, or kLeafTag for a leaf
    float value = 0.0f;           // split value (split nodes only)
    std::uint32_t right = 0;      // split: slot of the right child
    std::uint32_t begin = 0;      // leaf: offset into leaf_points
    std::uint32_t count = 0;      // leaf: number of points

    bool is_leaf() const { return dim == kLeafTag; }

    bool operator==(const TreeNode&) const = default;
};

/// One randomized k-d tree: preorder node array, concatenated leaf
/// membership, and the per-tree reflection when rotation is enabled.
struct Tree {
    std::vector<TreeNode> nodes;
    std::vector<index_t> leaf_points;
    std::optional<HouseholderTransform> transform;
    std::uint64_t seed = 0;

    // Every split node has two children, so leaves = (nodes + 1) / 2.
    std::uint32_t leaf_count() const {
        return static_cast<std::uint32_t>((nodes.size() + 1) / 2);
    }
};

/// Lower-bounding 2-approximation of the diameter of the indexed subset:
/// from a random start, walk to the farthest point, then return the
/// farthest distance from there. The result is within [diam/2, diam].
double approximate_diameter(std::span<const index_t> points, const Dataset& data, Rng& rng);

/// Median plus uniform noise in [-3 diam / sqrt(d), +3 diam / sqrt(d)].
float perturbed_split_value(float median, double diameter, std::uint32_t dim, Rng& rng);

/// Stable in-place partition of `indices` by coords[i * d + split_dim] <
/// split_value: smaller coordinates first, the rest after, original order
/// kept on both sides. If either side would be empty (all coordinates
/// equal, or a perturbed value outside the range) the split falls back to
/// halving by position. Returns the boundary. `scratch` is reused storage.
std::size_t split_points(std::span<index_t> indices, const float* coords, std::uint32_t d,
                         std::uint32_t split_dim, float split_value,
                         std::vector<index_t>& scratch);

/// Builds one tree: optional per-tree shuffle and reflection, then
/// recursive median splits in dimensions drawn from `top_dims` until at
/// most max_leaf_points remain. Deterministic for a given tree_seed.
Tree build_tree(const Dataset& data, std::span<const std::uint32_t> top_dims,
                const ForestParams& params, std::uint64_t tree_seed);

} // namespace geraf
