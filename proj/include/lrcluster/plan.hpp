#pragma once
//
// Plan document: a Partition plus the request that produced it, serialized as
// pretty-printed JSON with keys in a fixed order.
//

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "lrcluster/clustering.hpp"

namespace lrc {

struct ClusteringRequest {
    Algorithm algorithm = Algorithm::max_norm;
    ErrorBudget budget;
    std::optional<SortMode> sort;  // residual and approx only
    std::size_t k = 0;             // random only
    std::uint64_t seed = 0;
    bool skip_rejected = false;

    // Throws InvalidArgument on an invalid combination (e.g. a sort mode for max-norm).
    void validate() const;
    SortMode effective_sort() const noexcept { return sort.value_or(SortMode::frobenius); }
};

struct Plan {
    ClusteringRequest request;
    Partition partition;
};

Partition run_clustering(const Collection& coll, const ClusteringRequest& request);

std::string plan_to_json(const Plan& plan);
// Throws FormatError on a malformed document.
Plan plan_from_json(const std::string& text);

void write_plan(const Plan& plan, const std::filesystem::path& path);
Plan read_plan(const std::filesystem::path& path);

}  // namespace lrc
