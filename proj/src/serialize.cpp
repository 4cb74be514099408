#include "geraf/serialize.hpp"

#include <algorithm>
#include <fstream>
#include <vector>

#include "geraf/rng.hpp"
#include "geraf/variance.hpp"
#include "wire.hpp"

namespace geraf {

namespace {

constexpr std::uint32_t kFlagRotation = 1u << 0;
constexpr std::uint32_t kFlagPerturbation = 1u << 1;
constexpr std::uint32_t kFlagShuffling = 1u << 2;

std::uint32_t pack_flags(const ForestParams& p) {
    return (p.use_rotation ? kFlagRotation : 0) |
           (p.use_split_perturbation ? kFlagPerturbation : 0) |
           (p.use_shuffling ? kFlagShuffling : 0);
}

[[noreturn]] void fail(const std::string& what, std::uint64_t offset) {
    throw FormatError("index: " + what, offset);
}

} // namespace

void save_forest(const Forest& forest, std::ostream& out) {
    const Dataset& data = *forest.dataset;
    out.write(kIndexMagic, 4);
    wire::put_u32(out, kIndexVersion);
    wire::put_u32(out, data.size());
    wire::put_u32(out, data.dim());
    wire::put_u32(out, forest.params.num_trees);
    wire::put_u32(out, forest.params.num_split_dims);
    wire::put_u32(out, forest.params.max_leaf_points);
    wire::put_u32(out, pack_flags(forest.params));
    wire::put_u64(out, forest.params.seed);

    for (const Tree& tree : forest.trees) {
        wire::put_u8(out, tree.transform ? 1 : 0);
        if (tree.transform) {
            for (double c : tree.transform->u)
                wire::put_f64(out, c);
        }
        wire::put_u32(out, static_cast<std::uint32_t>(tree.nodes.size()));
        for (const TreeNode& node : tree.nodes) {
            if (node.is_leaf()) {
                wire::put_u8(out, 1);
                wire::put_u32(out, node.count);
                for (std::uint32_t i = node.begin; i < node.begin + node.count; ++i)
                    wire::put_u32(out, tree.leaf_points[i]);
            } else {
                wire::put_u8(out, 0);
                wire::put_u32(out, node.dim);
                wire::put_f32(out, node.value);
            }
        }
    }
    if (!out)
        throw std::runtime_error("index: write failed");
}

void save_forest(const Forest& forest, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    save_forest(forest, out);
}

Forest load_forest(std::istream& in, const Dataset& data) {
    wire::Reader r(in);

    char magic[4];
    if (!r.read(magic, 4))
        fail("truncated magic", 0);
    if (!std::equal(magic, magic + 4, kIndexMagic))
        fail("bad magic", 0);

    std::uint32_t version, n, d, m, t, p, flags;
    std::uint64_t seed;
    std::uint64_t off = r.offset();
    if (!r.read_u32(version)) fail("truncated header", off);
    if (version != kIndexVersion) fail("unsupported version " + std::to_string(version), off);
    off = r.offset();
    if (!r.read_u32(n) || !r.read_u32(d) || !r.read_u32(m) || !r.read_u32(t) ||
        !r.read_u32(p) || !r.read_u32(flags) || !r.read_u64(seed))
        fail("truncated header", off);
    if (m < 1 || t < 1 || p < 1)
        fail("header values out of range", off);

    if (n != data.size() || d != data.dim())
        throw UsageError("index was built for a " + std::to_string(n) + "x" + std::to_string(d) +
                         " dataset, got " + std::to_string(data.size()) + "x" +
                         std::to_string(data.dim()));
    if (t > d)
        fail("header has t > d", off);

    Forest forest;
    forest.dataset = &data;
    forest.params.num_trees = m;
    forest.params.num_split_dims = t;
    forest.params.max_leaf_points = p;
    forest.params.use_rotation = flags & kFlagRotation;
    forest.params.use_split_perturbation = flags & kFlagPerturbation;
    forest.params.use_shuffling = flags & kFlagShuffling;
    forest.params.seed = seed;
    // Search-time defaults are not part of the file: leave the budget
    // effectively uncapped until the caller overrides it.
    forest.params.max_leaf_checks = n;
    forest.params.epsilon = 0.0;

    forest.trees.resize(m);
    std::vector<std::uint8_t> index_seen(n, 0);

    for (std::uint32_t ti = 0; ti < m; ++ti) {
        Tree& tree = forest.trees[ti];
        tree.seed = derive_seed(seed, ti);

        std::uint8_t has_transform;
        off = r.offset();
        if (!r.read_u8(has_transform))
            fail("truncated tree header", off);
        if (has_transform > 1)
            fail("bad transform flag", off);
        if (has_transform) {
            HouseholderTransform h;
            h.u.resize(d);
            for (std::uint32_t j = 0; j < d; ++j) {
                off = r.offset();
                if (!r.read_f64(h.u[j]))
                    fail("truncated transform vector", off);
            }
            tree.transform = std::move(h);
        }

        std::uint32_t node_count;
        off = r.offset();
        if (!r.read_u32(node_count))
            fail("truncated node count", off);
        if (node_count < 1 || node_count > 2 * std::uint64_t(n))
            fail("node count out of range", off);

        tree.nodes.reserve(node_count);
        std::fill(index_seen.begin(), index_seen.end(), 0);

        // Children are implicit in the preorder walk: the node after a
        // split starts its left subtree; the node after that subtree
        // completes starts the right one.
        struct Pending {
            std::uint32_t slot;
            std::uint32_t children_done;
        };
        std::vector<Pending> open;

        for (std::uint32_t s = 0; s < node_count; ++s) {
            if (s > 0 && open.empty())
                fail("extra node after tree completed", r.offset());

            std::uint8_t tag;
            off = r.offset();
            if (!r.read_u8(tag))
                fail("truncated node", off);

            if (!open.empty() && open.back().children_done == 1)
                tree.nodes[open.back().slot].right = s;

            if (tag == 0) {
                TreeNode node;
                off = r.offset();
                if (!r.read_u32(node.dim) || !r.read_f32(node.value))
                    fail("truncated split node", off);
                if (node.dim >= d)
                    fail("split dimension out of range", off);
                tree.nodes.push_back(node);
                open.push_back({s, 0});
            } else if (tag == 1) {
                TreeNode node;
                off = r.offset();
                if (!r.read_u32(node.count))
                    fail("truncated leaf count", off);
                if (node.count < 1 || node.count > p)
                    fail("leaf size out of range", off);
                node.begin = static_cast<std::uint32_t>(tree.leaf_points.size());
                for (std::uint32_t i = 0; i < node.count; ++i) {
                    std::uint32_t idx;
                    off = r.offset();
                    if (!r.read_u32(idx))
                        fail("truncated leaf indices", off);
                    if (idx >= n)
                        fail("point index out of range", off);
                    if (index_seen[idx]++)
                        fail("point index appears in two leaves", off);
                    tree.leaf_points.push_back(idx);
                }
                tree.nodes.push_back(node);
                while (!open.empty() && open.back().children_done == 1)
                    open.pop_back();
                if (!open.empty())
                    open.back().children_done = 1;
            } else {
                fail("bad node tag", off);
            }
        }
        if (!open.empty())
            fail("tree ends with an incomplete split", r.offset());
        if (tree.leaf_points.size() != n)
            fail("tree does not cover every point", r.offset());
    }

    // The dimension set is derived data; recompute it and cross-check the
    // stored splits so an index cannot be attached to the wrong dataset.
    const std::vector<double> variances = compute_variances(data);
    forest.top_dims = top_t_dimensions(variances, forest.params.num_split_dims);
    std::vector<bool> allowed(data.dim(), false);
    for (std::uint32_t dim : forest.top_dims)
        allowed[dim] = true;
    for (const Tree& tree : forest.trees)
        for (const TreeNode& node : tree.nodes)
            if (!node.is_leaf() && !allowed[node.dim])
                throw UsageError("index: split dimensions do not match this dataset's "
                                 "variance profile; wrong dataset?");
    return forest;
}

Forest load_forest(const std::string& path, const Dataset& data) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open index: " + path);
    return load_forest(in, data);
}

} // namespace geraf
