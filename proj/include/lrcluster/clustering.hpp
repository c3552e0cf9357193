#pragma once
//
// Greedy clustering of a collection under a relative truncation-error budget.
//
// Every algorithm visits blocks by decreasing Frobenius norm (ties: ascending
// id), opens a cluster at the largest remaining block and grows it while a
// merge certificate evaluated on the post-merge cluster stays within epsilon:
//
//   max-norm   norm-only tail bound, anchor/head absorbs its own energy
//   residual   pooled residual spectrum (certified)
//   approx     truncated incremental Gram plug-in estimate (not certified)
//

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lrcluster/bounds.hpp"
#include "lrcluster/collection.hpp"

namespace lrc {

struct ErrorBudget {
    double epsilon = 0.05;        // relative Frobenius tolerance, in (0, 1)
    std::size_t target_rank = 1;  // r >= 1

    void validate() const;
};

enum class SortMode { frobenius, residual };
enum class Algorithm { max_norm, residual, approx, random };

std::string_view to_string(SortMode mode) noexcept;
std::string_view to_string(Algorithm algorithm) noexcept;
SortMode sort_mode_from_string(std::string_view name);
Algorithm algorithm_from_string(std::string_view name);

struct Cluster {
    std::string id;
    std::vector<std::string> members;  // append order
    std::size_t cols = 0;              // N_c, total member columns
    std::size_t rank = 0;              // r_c
    BoundValue predicted;

    friend bool operator==(const Cluster&, const Cluster&) = default;
};

struct Partition {
    Eigen::Index rows = 0;  // m
    std::vector<Cluster> clusters;

    std::size_t block_count() const noexcept;
};

inline bool operator==(const BoundValue& a, const BoundValue& b) {
    return a.kind == b.kind && a.error == b.error && a.error_sq == b.error_sq &&
           a.relative == b.relative;
}
inline bool operator==(const Partition& a, const Partition& b) {
    return a.rows == b.rows && a.clusters == b.clusters;
}

struct ClusterOptions {
    // Keep scanning after a rejected candidate instead of closing the cluster.
    bool skip_rejected = false;
    Tolerances tol;
};

Partition cluster_max_norm(const Collection& coll, const ErrorBudget& budget);

Partition cluster_residual(const Collection& coll, const ErrorBudget& budget, SortMode mode,
                           const ClusterOptions& options = {});

Partition cluster_approx(const Collection& coll, const ErrorBudget& budget, SortMode mode,
                         const ClusterOptions& options = {});

// Uniform seeded assignment into k non-empty clusters; predicted errors are
// exact (oracle SVD), ranks capped by assign_rank.
Partition cluster_random(const Collection& coll, std::size_t k, std::uint64_t seed,
                         std::size_t target_rank);

// r_c = min(r, m, N_c) for every cluster.
Partition assign_rank(Partition partition, std::size_t r);

// Throws InvalidArgument unless the partition is a disjoint cover of the
// collection's ids with consistent column counts.
void validate_cover(const Partition& partition, const Collection& coll);

// Oracle: exact truncation error of every cluster at its rank r_c.
std::vector<BoundValue> exact_cluster_errors(const Partition& partition, const Collection& coll);

}  // namespace lrc
