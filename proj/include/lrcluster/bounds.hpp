#pragma once
//
// Closed-form bounds and estimators for the rank-r truncation error of a
// horizontal concatenation M = [A_1, ..., A_K], computed from per-block
// quantities. All arithmetic is carried out on squared errors, clamped to
// [0, ||M||_F^2] before the square root.
//

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "lrcluster/collection.hpp"
#include "lrcluster/linalg.hpp"

namespace lrc {

enum class BoundKind { weyl, residual, plugin, exact };

std::string_view to_string(BoundKind kind) noexcept;
// Throws InvalidArgument on an unknown name.
BoundKind bound_kind_from_string(std::string_view name);

struct BlockSummary {
    std::string block_id;
    std::size_t cols = 0;
    double energy_sq = 0.0;
    std::vector<double> leading_sv_sq;  // sigma_i(A_j)^2, non-increasing
    // sum_{i > leading_sv_sq.size()} sigma_i(A_j)^2 when known, negative otherwise.
    double tail_sv_sq = -1.0;
};

// Summary carrying the top-r squared singular values of the block.
BlockSummary summarize(const Block& block, std::size_t r);

struct BoundValue {
    BoundKind kind = BoundKind::exact;
    double error = 0.0;
    double error_sq = 0.0;
    double relative = 0.0;  // error / ||M||_F, 0 for an all-zero cluster

    // Clamps error_sq into [0, total_energy_sq].
    static BoundValue make(BoundKind kind, double error_sq, double total_energy_sq);
};

// Sum_j ||A_j||^2 - max_j sum_{i<=r} sigma_i(A_j)^2.
BoundValue weyl_bound(const std::vector<BlockSummary>& summaries, std::size_t r);

// total - head, valid when the head's rank is at most r.
BoundValue weyl_tail_bound(double total_energy_sq, double head_energy_sq);

// total - sum_{j<=r} mu_j^2, mu the pooled residual singular values.
BoundValue residual_bound(double total_energy_sq, const Spectrum& mu, std::size_t r);

// total - sum_{j<=r} sigma_tilde_j^2. No inequality versus the exact error.
BoundValue plugin_estimate(double total_energy_sq, const Spectrum& sigma_tilde, std::size_t r);

// Oracle: truncation error from a full SVD of the explicit concatenation.
BoundValue exact_bound(const Matrix& M, std::size_t r);

// predicted.error - exact.error
double slack(const BoundValue& predicted, const BoundValue& exact) noexcept;

}  // namespace lrc
