#include "geraf/eval.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <sstream>

#include <omp.h>

#include "geraf/distance.hpp"
#include "geraf/threads.hpp"

namespace geraf {

KnnResult brute_force_knn(const Dataset& data, std::span<const float> q, std::size_t k) {
    if (k < 1)
        throw UsageError("brute_force_knn: k must be >= 1");
    if (q.size() != data.dim())
        throw UsageError("brute_force_knn: query dimension mismatch");

    KnnResult result;
    ResultSet best;
    best.reset(std::min<std::size_t>(k, data.size()));
    double min_sq = std::numeric_limits<double>::infinity();
    for (index_t i = 0; i < data.size(); ++i) {
        const double sq = detail::sq_dist_raw(q.data(), data.row(i), data.dim());
        best.offer(i, sq);
        if (sq < min_sq) {
            min_sq = sq;
            result.tie_set.clear();
            result.tie_set.push_back(i);
        } else if (sq == min_sq) {
            result.tie_set.push_back(i);
        }
    }
    result.neighbors = best.sorted();
    return result;
}

GroundTruth compute_ground_truth(const Dataset& data, const Dataset& queries, std::size_t k,
                                 int num_threads) {
    if (queries.dim() != data.dim())
        throw UsageError("compute_ground_truth: query dimension mismatch");
    const std::uint32_t nq = queries.size();
    GroundTruth truth;
    truth.k = k;
    truth.nearest_sq_dist.resize(nq);
    truth.tie_sets.resize(nq);
    truth.top_k.resize(nq);

    const int threads = resolve_threads(num_threads);
#pragma omp parallel for schedule(dynamic, 8) num_threads(threads)
    for (std::int64_t qi = 0; qi < std::int64_t(nq); ++qi) {
        KnnResult res = brute_force_knn(data, queries.point(index_t(qi)), k);
        truth.nearest_sq_dist[qi] = res.neighbors.empty()
                                        ? std::numeric_limits<double>::infinity()
                                        : res.neighbors.front().sq_dist;
        truth.tie_sets[qi] = std::move(res.tie_set);
        truth.top_k[qi].reserve(res.neighbors.size());
        for (const Neighbor& nb : res.neighbors)
            truth.top_k[qi].push_back(nb.index);
    }
    return truth;
}

EvalReport evaluate(const Forest& forest, const Dataset& queries, const GroundTruth& truth,
                    std::size_t k, double epsilon, const SearchOptions& options,
                    int num_threads) {
    const Dataset& data = *forest.dataset;
    if (queries.dim() != data.dim())
        throw UsageError("evaluate: query dimension mismatch");
    if (truth.tie_sets.size() != queries.size())
        throw UsageError("evaluate: ground truth does not cover the query set");

    SearchOptions opts = options;
    opts.epsilon = epsilon;

    const std::uint32_t nq = queries.size();
    EvalReport report;
    report.num_queries = nq;
    if (nq == 0)
        return report;

    const double bound_factor = (1.0 + epsilon) * (1.0 + epsilon); // squared-distance bound

    std::vector<std::uint8_t> missed(nq, 0), approx_missed(nq, 0);
    std::vector<double> recall(nq, 0.0);
    std::vector<std::uint64_t> leaf_checks(nq, 0), dist_comps(nq, 0);

    const int threads = resolve_threads(num_threads);
#pragma omp parallel num_threads(threads)
    {
        QueryScratch scratch;
#pragma omp for schedule(dynamic, 8)
        for (std::int64_t qi = 0; qi < std::int64_t(nq); ++qi) {
            const auto q = queries.point(index_t(qi));
            const std::vector<Neighbor> found = search(forest, q, k, scratch, opts);
            leaf_checks[qi] = scratch.leaves_checked;
            dist_comps[qi] = scratch.distance_computations;

            const std::vector<index_t>& ties = truth.tie_sets[qi];
            if (found.empty()) {
                missed[qi] = 1;
                approx_missed[qi] = 1;
            } else {
                const index_t first = found.front().index;
                const bool hit = std::find(ties.begin(), ties.end(), first) != ties.end();
                missed[qi] = hit ? 0 : 1;
                if (!hit) {
                    // Recompute with the direct kernel so the bound check
                    // is not polluted by dot-product rounding.
                    const double sq = detail::sq_dist_raw(q.data(), data.row(first), data.dim());
                    approx_missed[qi] = sq > bound_factor * truth.nearest_sq_dist[qi] ? 1 : 0;
                }
            }

            const std::vector<index_t>& exact = truth.top_k[qi];
            if (!exact.empty()) {
                std::size_t got = 0;
                for (const Neighbor& nb : found)
                    if (std::find(exact.begin(), exact.end(), nb.index) != exact.end())
                        ++got;
                recall[qi] = double(got) / double(exact.size());
            }
        }
    }

    std::uint64_t misses = 0, approx_misses = 0, checks = 0, comps = 0;
    double recall_sum = 0.0;
    for (std::uint32_t qi = 0; qi < nq; ++qi) {
        misses += missed[qi];
        approx_misses += approx_missed[qi];
        checks += leaf_checks[qi];
        comps += dist_comps[qi];
        recall_sum += recall[qi];
    }
    report.miss_pct = 100.0 * double(misses) / double(nq);
    report.approx_miss_pct = 100.0 * double(approx_misses) / double(nq);
    report.recall_at_k = recall_sum / double(nq);
    report.leaf_checks_mean = double(checks) / double(nq);
    report.dist_comps_mean = double(comps) / double(nq);

    // Latency pass: single-threaded, one untimed warm-up, scratch reused.
    {
        using clock = std::chrono::steady_clock;
        QueryScratch scratch;
        (void)search(forest, queries.point(0), k, scratch, opts);
        std::vector<double> micros(nq);
        for (std::uint32_t qi = 0; qi < nq; ++qi) {
            const auto t0 = clock::now();
            (void)search(forest, queries.point(qi), k, scratch, opts);
            const auto t1 = clock::now();
            micros[qi] = std::chrono::duration<double, std::micro>(t1 - t0).count();
        }
        double sum = 0.0;
        for (double us : micros)
            sum += us;
        report.query_us_mean = sum / double(nq);
        std::nth_element(micros.begin(), micros.begin() + nq / 2, micros.end());
        report.query_us_median = micros[nq / 2];
    }

    return report;
}

std::string report_csv_header() {
    return "dataset,n,d,m,t,p,c,epsilon,miss_pct,approx_miss_pct,build_s,"
           "query_us_mean,query_us_median,leaf_checks_mean,dist_comps_mean";
}

std::string report_csv_row(const std::string& dataset_name, std::uint32_t n, std::uint32_t d,
                           const ForestParams& params, double epsilon, const EvalReport& report) {
    std::ostringstream out;
    out << dataset_name << ',' << n << ',' << d << ',' << params.num_trees << ','
        << params.num_split_dims << ',' << params.max_leaf_points << ','
        << params.max_leaf_checks << ',' << epsilon << ',' << std::fixed
        << std::setprecision(4) << report.miss_pct << ',' << report.approx_miss_pct << ','
        << std::setprecision(6) << report.build_seconds << ',' << std::setprecision(3)
        << report.query_us_mean << ',' << report.query_us_median << ','
        << std::setprecision(2) << report.leaf_checks_mean << ',' << report.dist_comps_mean;
    return out.str();
}

} // namespace geraf
