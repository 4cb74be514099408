#include "geraf/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "geraf/distance.hpp"
#include "geraf/selection.hpp"

namespace geraf {

double approximate_diameter(std::span<const index_t> points, const Dataset& data, Rng& rng) {
    if (points.empty())
        throw UsageError("approximate_diameter: empty point set");
    const std::uint32_t d = data.dim();

    auto farthest_from = [&](index_t from) {
        const float* x = data.row(from);
        index_t arg = from;
        double best = -1.0;
        for (index_t idx : points) {
            const double sq = detail::sq_dist_raw(x, data.row(idx), d);
            if (sq > best) {
                best = sq;
                arg = idx;
            }
        }
        return std::pair<index_t, double>{arg, best};
    };

    const index_t start = points[rng() % points.size()];
    const auto [far_a, sq_a] = farthest_from(start);
    const auto [far_b, sq_b] = farthest_from(far_a);
    (void)far_b;
    return std::sqrt(std::max(sq_b, sq_a));
}

float perturbed_split_value(float median, double diameter, std::uint32_t dim, Rng& rng) {
    if (dim == 0)
        throw UsageError("perturbed_split_value: dimension must be >= 1");
    const double half_width = 3.0 * diameter / std::sqrt(double(dim));
    if (half_width <= 0.0)
        return median;
    std::uniform_real_distribution<double> noise(-half_width, half_width);
    return static_cast<float>(double(median) + noise(rng));
}

std::size_t split_points(std::span<index_t> indices, const float* coords, std::uint32_t d,
                         std::uint32_t split_dim, float split_value,
                         std::vector<index_t>& scratch) {
    if (indices.empty())
        throw UsageError("split_points: empty point set");
    scratch.clear();
    std::size_t w = 0;
    for (std::size_t i = 0; i < indices.size(); ++i) {
        const index_t idx = indices[i];
        if (coords[std::size_t(idx) * d + split_dim] < split_value)
            indices[w++] = idx;
        else
            scratch.push_back(idx);
    }
    if (w == 0 || w == indices.size()) {
        // One side empty (all coordinates equal, or a perturbed value out
        // of range): halve by position instead.
        if (w == 0)
            std::copy(scratch.begin(), scratch.end(), indices.begin());
        return indices.size() / 2;
    }
    std::copy(scratch.begin(), scratch.end(), indices.begin() + w);
    return w;
}

Tree build_tree(const Dataset& data, std::span<const std::uint32_t> top_dims,
                const ForestParams& params, std::uint64_t tree_seed) {
    if (data.empty())
        throw UsageError("build_tree: empty dataset");
    if (top_dims.empty())
        throw UsageError("build_tree: empty split-dimension set");

    const std::uint32_t n = data.size();
    const std::uint32_t d = data.dim();
    Rng rng(tree_seed);

    std::vector<index_t> indices(n);
    std::iota(indices.begin(), indices.end(), index_t{0});
    if (params.use_shuffling)
        std::shuffle(indices.begin(), indices.end(), rng);

    Tree tree;
    tree.seed = tree_seed;

    // With rotation the reflected pointset is materialized for the build
    // and dropped afterwards; only the reflection itself is kept.
    const float* coords = data.points().data();
    std::vector<float> reflected;
    if (params.use_rotation) {
        tree.transform = sample_unit_vector(rng, d);
        reflected.resize(std::size_t(n) * d);
        householder_apply_rows(*tree.transform, coords, n, d, reflected.data());
        coords = reflected.data();
    }

    const std::uint32_t p = params.max_leaf_points;
    tree.nodes.reserve(std::size_t(4) * (n / std::max(1u, p) + 1));

    constexpr std::uint32_t kNoPatch = 0xffffffffu;
    struct Frame {
        std::uint32_t lo, hi;
        std::uint32_t patch; // parent slot whose right link points here
    };
    std::vector<Frame> stack;
    stack.push_back({0, n, kNoPatch});

    std::vector<index_t> scratch;
    std::vector<float> dim_values;

    while (!stack.empty()) {
        const Frame f = stack.back();
        stack.pop_back();
        const auto slot = static_cast<std::uint32_t>(tree.nodes.size());
        if (f.patch != kNoPatch)
            tree.nodes[f.patch].right = slot;

        const std::uint32_t size = f.hi - f.lo;
        if (size <= p) {
            TreeNode leaf;
            leaf.begin = f.lo;
            leaf.count = size;
            tree.nodes.push_back(leaf);
            continue;
        }

        const std::uint32_t split_dim = top_dims[rng() % top_dims.size()];
        dim_values.resize(size);
        for (std::uint32_t i = 0; i < size; ++i)
            dim_values[i] = coords[std::size_t(indices[f.lo + i]) * d + split_dim];
        float value = quickselect_median(dim_values, rng);
        if (params.use_split_perturbation) {
            const double diam =
                approximate_diameter({indices.data() + f.lo, size}, data, rng);
            value = perturbed_split_value(value, diam, d, rng);
        }

        const auto mid = f.lo + static_cast<std::uint32_t>(split_points(
            {indices.data() + f.lo, size}, coords, d, split_dim, value, scratch));

        TreeNode node;
        node.dim = split_dim;
        node.value = value;
        tree.nodes.push_back(node);

        stack.push_back({mid, f.hi, slot}); // right child, link patched on emit
        stack.push_back({f.lo, mid, kNoPatch}); // left child is the next slot
    }

    tree.leaf_points = std::move(indices);
    return tree;
}

} // namespace geraf
