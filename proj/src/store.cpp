#include "lrcluster/store.hpp"

#include <set>

#include "lrcluster/error.hpp"

namespace lrc {

std::size_t CompressedCluster::total_cols() const noexcept {
    std::size_t n = 0;
    for (const StoreMember& mem : members) {
        n += mem.cols;
    }
    return n;
}

namespace {

bool same_matrix(const Matrix& a, const Matrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

}  // namespace

bool operator==(const CompressedCluster& a, const CompressedCluster& b) {
    return a.id == b.id && a.rank == b.rank && a.members == b.members &&
           same_matrix(a.U_tilde, b.U_tilde) && same_matrix(a.V, b.V);
}

CompressedStore compress(const Collection& coll, const Partition& plan) {
    validate_cover(plan, coll);
    CompressedStore store;
    store.rows = coll.rows();
    store.clusters.reserve(plan.clusters.size());
    for (const Cluster& c : plan.clusters) {
        const Matrix M = coll.concat(c.members);
        const ThinSvd svd = thin_svd(M);
        const auto r = static_cast<Eigen::Index>(c.rank);

        CompressedCluster out;
        out.id = c.id;
        out.rank = c.rank;
        Eigen::VectorXd s(r);
        for (Eigen::Index j = 0; j < r; ++j) {
            s(j) = svd.S[static_cast<std::size_t>(j)];
        }
        out.U_tilde = svd.U.leftCols(r) * s.asDiagonal();
        out.V = svd.V.leftCols(r);
        for (const std::string& id : c.members) {
            out.members.push_back({id, static_cast<std::size_t>(coll.at(id).cols())});
        }
        store.clusters.push_back(std::move(out));
    }
    return store;
}

Matrix reconstruct_block(const CompressedStore& store, const std::string& block_id) {
    for (const CompressedCluster& c : store.clusters) {
        Eigen::Index offset = 0;
        for (const StoreMember& mem : c.members) {
            const auto n = static_cast<Eigen::Index>(mem.cols);
            if (mem.block_id == block_id) {
                return c.U_tilde * c.V.middleRows(offset, n).transpose();
            }
            offset += n;
        }
    }
    throw NotFound("unknown block id '" + block_id + "'");
}

std::size_t memory_footprint(const CompressedStore& store) noexcept {
    std::size_t total = 0;
    const auto m = static_cast<std::size_t>(store.rows);
    for (const CompressedCluster& c : store.clusters) {
        total += c.rank * (m + c.total_cols());
    }
    return total;
}

void validate_store_cover(const CompressedStore& store, const Collection& coll) {
    if (store.rows != coll.rows()) {
        throw InvalidArgument("store row count does not match the collection");
    }
    std::set<std::string> seen;
    for (const CompressedCluster& c : store.clusters) {
        for (const StoreMember& mem : c.members) {
            if (!coll.contains(mem.block_id)) {
                throw InvalidArgument("store holds unknown block '" + mem.block_id + "'");
            }
            if (static_cast<Eigen::Index>(mem.cols) != coll.at(mem.block_id).cols()) {
                throw InvalidArgument("column count of block '" + mem.block_id + "' differs");
            }
            if (!seen.insert(mem.block_id).second) {
                throw InvalidArgument("block '" + mem.block_id + "' stored twice");
            }
        }
    }
    if (seen.size() != coll.size()) {
        throw InvalidArgument("store covers " + std::to_string(seen.size()) + " of " +
                              std::to_string(coll.size()) + " blocks");
    }
}

double compression_ratio(const Collection& coll, const CompressedStore& store) {
    validate_store_cover(store, coll);
    return static_cast<double>(coll.parameter_count()) /
           static_cast<double>(memory_footprint(store));
}

}  // namespace lrc
