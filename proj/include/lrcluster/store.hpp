#pragma once
//
// Shared-basis store: one pair (U_tilde_c, V_c) per cluster with
// M_c ~= U_tilde_c V_c^T, U_tilde_c = U_c diag(S_c). Member i of the cluster
// owns a contiguous row range of V_c, so A_i ~= U_tilde_c V_{c,i}^T.
//

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lrcluster/clustering.hpp"
#include "lrcluster/collection.hpp"
#include "lrcluster/linalg.hpp"

namespace lrc {

struct StoreMember {
    std::string block_id;
    std::size_t cols = 0;

    friend bool operator==(const StoreMember&, const StoreMember&) = default;
};

struct CompressedCluster {
    std::string id;
    std::size_t rank = 0;
    Matrix U_tilde;                    // m x r_c
    std::vector<StoreMember> members;  // append order
    Matrix V;                          // N_c x r_c

    std::size_t total_cols() const noexcept;
};

bool operator==(const CompressedCluster& a, const CompressedCluster& b);

struct CompressedStore {
    static constexpr std::uint32_t kFormatVersion = 1;

    Eigen::Index rows = 0;
    std::vector<CompressedCluster> clusters;
    std::uint32_t format_version = kFormatVersion;

    friend bool operator==(const CompressedStore&, const CompressedStore&) = default;
};

// Truncated SVD of every cluster's concatenation at its rank r_c.
CompressedStore compress(const Collection& coll, const Partition& plan);

// U_tilde_c V_{c,i}^T. Throws NotFound for an unknown id.
Matrix reconstruct_block(const CompressedStore& store, const std::string& block_id);

// Stored real values, sum_c r_c (m + N_c).
std::size_t memory_footprint(const CompressedStore& store) noexcept;

// (sum_i m n_i) / memory_footprint. Throws InvalidArgument unless the store
// covers exactly the collection's blocks.
double compression_ratio(const Collection& coll, const CompressedStore& store);

// Throws InvalidArgument unless ids and column counts match the collection.
void validate_store_cover(const CompressedStore& store, const Collection& coll);

}  // namespace lrc
