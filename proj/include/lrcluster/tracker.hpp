#pragma once
//
// Spectral state of a growing concatenation M = [A_1, ..., A_t], maintained
// block by block without forming M.
//
//  ResidualTracker  pooled singular values mu of the residuals
//                   R_i = (I - Q_{i-1} Q_{i-1}^T) A_i. The residual ranges are
//                   pairwise orthogonal, so the pool equals the spectrum of
//                   [R_1, ..., R_t] and mu_j <= sigma_j(M). Never truncated.
//
//  GramTracker      Q S Q^T = M M^T, extended exactly by each append and
//                   optionally truncated to its top-r eigenpairs.
//

#include <cstddef>
#include <string>
#include <vector>

#include "lrcluster/bounds.hpp"
#include "lrcluster/collection.hpp"
#include "lrcluster/linalg.hpp"

namespace lrc {

class ResidualTracker {
public:
    explicit ResidualTracker(Eigen::Index rows, Tolerances tol = {});

    // Throws InvalidArgument on a row mismatch.
    void append(const Block& block);

    // Top r values of sqrt(mu_sq), zero padded.
    Spectrum top_mu(std::size_t r) const;
    // Every pooled value, non-increasing.
    Spectrum mu() const;

    // ||(I - Q Q^T) A||_F against the current basis.
    double residual_norm_of(const Matrix& A) const;

    Eigen::Index rows() const noexcept { return rows_; }
    const Matrix& basis() const noexcept { return basis_; }
    const std::vector<double>& mu_sq() const noexcept { return mu_sq_; }
    double total_energy_sq() const noexcept { return total_energy_sq_; }
    // Energy not represented in the pool: projections onto earlier bases plus
    // residual directions below the rank tolerance. Equals total - sum(mu_sq).
    double unpooled_energy_sq() const noexcept { return unpooled_energy_sq_; }
    const std::vector<std::string>& member_ids() const noexcept { return member_ids_; }

private:
    Eigen::Index rows_;
    Tolerances tol_;
    Matrix basis_;
    std::vector<double> mu_sq_;  // kept non-increasing
    double total_energy_sq_ = 0.0;
    double unpooled_energy_sq_ = 0.0;
    std::vector<std::string> member_ids_;
};

class GramTracker {
public:
    GramTracker(Eigen::Index rows, std::size_t target_rank, Tolerances tol = {});

    // Exact extension of Q S Q^T by A A^T; no truncation.
    void append(const Block& block);

    // Keep the top target_rank eigenpairs of S; S becomes diagonal.
    void truncate();

    // sqrt of the eigenvalues of S, non-increasing, zero padded to target_rank.
    Spectrum sigma_tilde() const;
    // Eigenvalues of S, non-increasing.
    Spectrum eigenvalues() const;

    double residual_norm_of(const Matrix& A) const;

    // Q S Q^T
    Matrix gram() const;

    Eigen::Index rows() const noexcept { return rows_; }
    std::size_t target_rank() const noexcept { return target_rank_; }
    const Matrix& basis() const noexcept { return basis_; }
    const Matrix& gram_core() const noexcept { return gram_; }
    double total_energy_sq() const noexcept { return total_energy_sq_; }
    double discarded_energy() const noexcept { return discarded_energy_; }
    // total - trace(S): truncated eigenvalues plus dropped residual directions.
    double unexplained_energy_sq() const noexcept { return unexplained_energy_sq_; }
    const std::vector<std::string>& member_ids() const noexcept { return member_ids_; }

private:
    Eigen::Index rows_;
    std::size_t target_rank_;
    Tolerances tol_;
    Matrix basis_;
    Matrix gram_;
    double total_energy_sq_ = 0.0;
    double discarded_energy_ = 0.0;
    double unexplained_energy_sq_ = 0.0;
    std::vector<std::string> member_ids_;
};

// residual_bound(total, top_mu(r), r) evaluated as unpooled + sum_{j>r} mu_j^2,
// which keeps full relative accuracy when the bound is near zero.
BoundValue residual_bound(const ResidualTracker& t, std::size_t r);

// plugin_estimate(total, sigma_tilde, r) evaluated as unexplained + sum_{j>r} lambda_j.
BoundValue plugin_estimate(const GramTracker& t, std::size_t r);

// Value-returning forms; the argument is left untouched.
ResidualTracker residual_append(ResidualTracker t, const Block& block);
GramTracker gram_append(GramTracker t, const Block& block);
GramTracker gram_truncate(GramTracker t);

}  // namespace lrc
