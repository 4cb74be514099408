#include "geraf/search.hpp"

#include <algorithm>
#include <cmath>

#include "geraf/distance.hpp"

namespace geraf {

namespace {

struct KeyGreater {
    bool operator()(const QueueEntry& a, const QueueEntry& b) const { return a.key > b.key; }
};

struct DistLess {
    bool operator()(const Neighbor& a, const Neighbor& b) const { return a.sq_dist < b.sq_dist; }
};

} // namespace

void MinQueue::push(QueueEntry e) {
    heap_.push_back(e);
    std::push_heap(heap_.begin(), heap_.end(), KeyGreater{});
}

QueueEntry MinQueue::pop() {
    std::pop_heap(heap_.begin(), heap_.end(), KeyGreater{});
    const QueueEntry e = heap_.back();
    heap_.pop_back();
    return e;
}

void ResultSet::reset(std::size_t capacity) {
    capacity_ = capacity;
    heap_.clear();
    heap_.reserve(capacity);
}

void ResultSet::offer(index_t index, double sq_dist) {
    if (heap_.size() < capacity_) {
        heap_.push_back({index, sq_dist});
        std::push_heap(heap_.begin(), heap_.end(), DistLess{});
    } else if (capacity_ > 0 && sq_dist < heap_.front().sq_dist) {
        std::pop_heap(heap_.begin(), heap_.end(), DistLess{});
        heap_.back() = {index, sq_dist};
        std::push_heap(heap_.begin(), heap_.end(), DistLess{});
    }
}

std::vector<Neighbor> ResultSet::sorted() const {
    std::vector<Neighbor> out = heap_;
    std::sort(out.begin(), out.end(), [](const Neighbor& a, const Neighbor& b) {
        if (a.sq_dist != b.sq_dist) return a.sq_dist < b.sq_dist;
        return a.index < b.index;
    });
    return out;
}

void QueryScratch::prepare(const Forest& forest, std::span<const float> q, std::size_t k) {
    const Dataset& data = *forest.dataset;
    if (q.size() != data.dim())
        throw UsageError("search: query dimension mismatch");

    query.assign(q.begin(), q.end());
    query_sq_norm = detail::dot_raw(query.data(), query.data(), query.size());

    transformed.resize(forest.trees.size());
    for (std::size_t i = 0; i < forest.trees.size(); ++i) {
        if (forest.trees[i].transform) {
            transformed[i].resize(q.size());
            householder_apply_rows(*forest.trees[i].transform, query.data(), 1, q.size(),
                                   transformed[i].data());
        } else {
            transformed[i].clear();
        }
    }

    if (visited.size() != data.size()) {
        visited.assign(data.size(), 0);
        epoch = 0;
    }
    if (++epoch == 0) { // stamp wrapped; start a fresh cycle
        std::fill(visited.begin(), visited.end(), 0u);
        epoch = 1;
    }

    queue.clear();
    results.reset(std::min<std::size_t>(k, data.size()));
    leaves_checked = 0;
    distance_computations = 0;
}

std::uint64_t leaf_check_budget(std::uint64_t max_leaf_checks, double epsilon) {
    if (max_leaf_checks < 1)
        throw UsageError("leaf_check_budget: budget must be >= 1");
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
        throw UsageError("leaf_check_budget: epsilon must be finite and >= 0");

    const double y = 1.0 + epsilon;
    int exp2 = 0;
    const double frac = std::frexp(y, &exp2); // y = frac * 2^exp2, frac in [0.5, 1)
    if (exp2 > 53)
        return 1; // y >= 2^53: only l = 0 satisfies l * y < c
    const auto mantissa = static_cast<std::uint64_t>(std::ldexp(frac, 53)); // y = mantissa / 2^(53 - exp2)
    const int shift = 53 - exp2;

    // Exact predicate l * y >= c on the binary representation of y.
    const auto reaches = [&](std::uint64_t l) {
        const auto lhs = static_cast<unsigned __int128>(l) * mantissa;
        const auto rhs = static_cast<unsigned __int128>(max_leaf_checks) << shift;
        return lhs >= rhs;
    };

    // The budget is the smallest l with l * y >= c; the float estimate is
    // off by at most a couple of units.
    std::uint64_t l = static_cast<std::uint64_t>(double(max_leaf_checks) / y);
    l = (l > 2) ? l - 2 : 0;
    while (!reaches(l))
        ++l;
    return l;
}

std::vector<std::vector<float>> transform_query(const Forest& forest, std::span<const float> q) {
    if (q.size() != forest.dim())
        throw UsageError("transform_query: query dimension mismatch");
    std::vector<std::vector<float>> out(forest.trees.size());
    for (std::size_t i = 0; i < forest.trees.size(); ++i) {
        if (forest.trees[i].transform)
            out[i] = householder_apply(*forest.trees[i].transform, q);
    }
    return out;
}

void descend(const Forest& forest, std::uint32_t tree_id, std::uint32_t node_id,
             QueryScratch& scratch, bool check) {
    const Tree& tree = forest.trees[tree_id];
    const float* q_t = scratch.query_for_tree(tree_id);
    const TreeNode* nodes = tree.nodes.data();

    std::uint32_t cur = node_id;
    while (!nodes[cur].is_leaf()) {
        const TreeNode& node = nodes[cur];
        const double sd = signed_distance(node, q_t);
        std::uint32_t taken, other;
        if (sd < 0.0) {
            taken = cur + 1; // left
            other = node.right;
        } else {
            taken = node.right;
            other = cur + 1;
        }
        scratch.queue.push({tree_id, other, std::abs(sd)});
        cur = taken;
    }

    const TreeNode& leaf = nodes[cur];
    if (!check) {
        // The landed leaf is not on any deferred path, so make it
        // extractable; the query sits inside its cell, hence key 0.
        scratch.queue.push({tree_id, cur, 0.0});
        return;
    }

    const Dataset& data = *forest.dataset;
    const std::uint32_t d = data.dim();
    const bool use_dot = d > kDotKernelDim;
    const float* q = scratch.query.data();
    for (std::uint32_t i = leaf.begin; i < leaf.begin + leaf.count; ++i) {
        const index_t idx = tree.leaf_points[i];
        if (scratch.visited[idx] == scratch.epoch)
            continue;
        scratch.visited[idx] = scratch.epoch;
        const double sq =
            use_dot ? squared_distance_via_dot(scratch.query_sq_norm, data.sq_norm(idx),
                                               detail::dot_raw(q, data.row(idx), d))
                    : detail::sq_dist_raw(q, data.row(idx), d);
        ++scratch.distance_computations;
        scratch.results.offer(idx, sq);
    }
}

std::vector<Neighbor> search(const Forest& forest, std::span<const float> q, std::size_t k,
                             QueryScratch& scratch, const SearchOptions& options) {
    if (forest.dataset == nullptr || forest.trees.empty())
        throw UsageError("search: forest is empty");
    if (k < 1)
        throw UsageError("search: k must be >= 1");
    const std::uint32_t c = options.max_leaf_checks.value_or(forest.params.max_leaf_checks);
    const double epsilon = options.epsilon.value_or(forest.params.epsilon);
    const std::uint64_t budget = leaf_check_budget(c, epsilon);

    scratch.prepare(forest, q, k);
    for (std::uint32_t i = 0; i < forest.trees.size(); ++i)
        descend(forest, i, 0, scratch, false);

    while (!scratch.queue.empty() && scratch.leaves_checked < budget) {
        const QueueEntry e = scratch.queue.pop();
        descend(forest, e.tree_id, e.node_id, scratch, true);
        ++scratch.leaves_checked;
    }
    return scratch.results.sorted();
}

std::vector<Neighbor> search(const Forest& forest, std::span<const float> q, std::size_t k,
                             const SearchOptions& options) {
    QueryScratch scratch;
    return search(forest, q, k, scratch, options);
}

} // namespace geraf
