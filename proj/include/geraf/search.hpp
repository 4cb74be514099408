#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "geraf/forest.hpp"
#include "geraf/types.hpp"

namespace geraf {

/// A deferred tree node: visit order across all trees is by ascending key,
/// the absolute signed distance from the query to the node's hyperplane.
struct QueueEntry {
    std::uint32_t tree_id = 0;
    std::uint32_t node_id = 0;
    double key = 0.0;
};

/// Binary min-heap on QueueEntry::key shared by all trees of a query.
class MinQueue {
public:
    bool empty() const { return heap_.empty(); }
    std::size_t size() const { return heap_.size(); }
    void clear() { heap_.clear(); }

    void push(QueueEntry e);
    QueueEntry pop(); // entry with the smallest key

private:
    std::vector<QueueEntry> heap_;
};

/// Keeps the `capacity` smallest-distance candidates seen so far, evicting
/// the current worst. Candidates must have distinct indices (the visited
/// tracker upstream guarantees one offer per point).
class ResultSet {
public:
    void reset(std::size_t capacity);

    void offer(index_t index, double sq_dist);

    std::size_t size() const { return heap_.size(); }
    bool full() const { return heap_.size() == capacity_; }

    /// Current eviction threshold; +inf while not full.
    double worst() const {
        return full() ? heap_.front().sq_dist : std::numeric_limits<double>::infinity();
    }

    /// Entries ordered by ascending distance (index ascending on exact ties).
    std::vector<Neighbor> sorted() const;

private:
    std::size_t capacity_ = 0;
    std::vector<Neighbor> heap_; // max-heap on sq_dist
};

/// Per-query mutable state. Reusable across sequential queries on one
/// thread; reuse keeps the visited array allocated and resets it in O(1)
/// by bumping the epoch stamp.
struct QueryScratch {
    MinQueue queue;
    ResultSet results;
    std::vector<float> query;               // original query coordinates
    double query_sq_norm = 0.0;
    std::vector<std::vector<float>> transformed; // per tree; empty = use `query`
    std::vector<std::uint32_t> visited;     // epoch stamp per point
    std::uint32_t epoch = 0;
    std::uint64_t leaves_checked = 0;
    std::uint64_t distance_computations = 0;

    /// Binds the scratch to a query: copies q, applies every tree's
    /// transform, resets counters, queue and results.
    void prepare(const Forest& forest, std::span<const float> q, std::size_t k);

    /// Coordinates this tree's split tests should read for the query.
    const float* query_for_tree(std::uint32_t tree_id) const {
        const std::vector<float>& t = transformed[tree_id];
        return t.empty() ? query.data() : t.data();
    }
};

struct SearchOptions {
    std::optional<std::uint32_t> max_leaf_checks; // overrides params.max_leaf_checks
    std::optional<double> epsilon;                // overrides params.epsilon
};

/// Signed distance from a transformed query to a split node's hyperplane:
/// coordinate minus split value. The sign picks the child to descend, the
/// magnitude is the queue key.
inline double signed_distance(const TreeNode& node, const float* q_t) {
    return double(q_t[node.dim]) - double(node.value);
}

/// Number of check-loop iterations admitted by budget c and epsilon: the
/// count of integers l >= 0 with l < c / (1 + epsilon). Evaluated with
/// exact integer arithmetic on the binary representation of 1 + epsilon,
/// so integer boundaries do not drift (c = 100, eps = 1.0 gives exactly 50).
std::uint64_t leaf_check_budget(std::uint64_t max_leaf_checks, double epsilon);

/// The query under every tree's transform; trees without one share q
/// (returned as an empty vector).
std::vector<std::vector<float>> transform_query(const Forest& forest, std::span<const float> q);

/// Walks from node_id down to a leaf, enqueueing the not-taken child of
/// every split passed (key |signed distance|; negative sign goes left).
/// At the leaf: with check, computes the squared distance from the
/// original query to each not-yet-visited point (dot-product kernel with
/// cached norms when d > 100) and offers it to the results; without
/// check, enqueues the leaf at key 0 so the check loop can reach it.
void descend(const Forest& forest, std::uint32_t tree_id, std::uint32_t node_id,
             QueryScratch& scratch, bool check);

/// k nearest neighbors of q, approximately: one no-check descent per tree
/// primes the queue, then leaves are checked in ascending key order until
/// the queue empties or leaf_check_budget(c, epsilon) checks have run.
/// Results come back sorted by ascending squared distance; fewer than k
/// are returned when the budget reaches fewer distinct points.
std::vector<Neighbor> search(const Forest& forest, std::span<const float> q, std::size_t k,
                             QueryScratch& scratch, const SearchOptions& options = {});

/// Convenience overload with throwaway scratch.
std::vector<Neighbor> search(const Forest& forest, std::span<const float> q, std::size_t k,
                             const SearchOptions& options = {});

} // namespace geraf
