#include "lrcluster/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "lrcluster/error.hpp"

namespace lrc {

namespace {

void check_rows(Eigen::Index expected, const Matrix& A) {
    if (A.rows() != expected) {
        throw InvalidArgument("tracker has " + std::to_string(expected) + " rows, block has " +
                              std::to_string(A.rows()));
    }
}

// New orthonormal directions for the residual R of block A, orthogonal to Q.
Matrix extension_basis(const Matrix& Q, const Matrix& R, double block_norm, const Tolerances& tol) {
    Matrix fresh = orthonormal_basis(R, tol, block_norm);
    if (fresh.cols() == 0 || Q.cols() == 0) {
        return fresh;
    }
    return orthonormal_basis(project_residual(Q, fresh), tol, 1.0);
}

void append_columns(Matrix& Q, const Matrix& extra) {
    if (extra.cols() == 0) {
        return;
    }
    Matrix grown(Q.rows(), Q.cols() + extra.cols());
    grown << Q, extra;
    Q = std::move(grown);
}

}  // namespace

ResidualTracker::ResidualTracker(Eigen::Index rows, Tolerances tol)
    : rows_(rows), tol_(tol), basis_(rows, 0) {
    if (rows < 1) {
        throw InvalidArgument("tracker row count must be positive");
    }
    tol_.validate();
}

void ResidualTracker::append(const Block& block) {
    const Matrix& A = block.data();
    check_rows(rows_, A);
    total_energy_sq_ += block.energy_sq();
    member_ids_.push_back(block.id());

    if (block.energy_sq() == 0.0) {
        return;
    }
    if (basis_.cols() >= rows_) {
        unpooled_energy_sq_ += block.energy_sq();
        return;
    }
    const Projection p = project_with_coeffs(basis_, A);
    const Matrix& R = p.residual;
    unpooled_energy_sq_ += p.coeffs.squaredNorm();
    const double block_norm = std::sqrt(block.energy_sq());
    const double floor = rank_threshold(tol_, A.rows(), A.cols(), block_norm);
    const Spectrum sv = singular_values(R);
    for (double s : sv.values()) {
        if (s > floor) {
            mu_sq_.push_back(s * s);
        } else {
            unpooled_energy_sq_ += s * s;
        }
    }
    std::sort(mu_sq_.begin(), mu_sq_.end(), std::greater<>());
    append_columns(basis_, extension_basis(basis_, R, block_norm, tol_));
}

Spectrum ResidualTracker::top_mu(std::size_t r) const {
    std::vector<double> out(r, 0.0);
    for (std::size_t j = 0; j < std::min(r, mu_sq_.size()); ++j) {
        out[j] = std::sqrt(mu_sq_[j]);
    }
    return Spectrum(std::move(out));
}

Spectrum ResidualTracker::mu() const {
    return top_mu(mu_sq_.size());
}

double ResidualTracker::residual_norm_of(const Matrix& A) const {
    check_rows(rows_, A);
    return project_residual(basis_, A).norm();
}

GramTracker::GramTracker(Eigen::Index rows, std::size_t target_rank, Tolerances tol)
    : rows_(rows), target_rank_(target_rank), tol_(tol), basis_(rows, 0), gram_(0, 0) {
    if (rows < 1) {
        throw InvalidArgument("tracker row count must be positive");
    }
    if (target_rank < 1) {
        throw InvalidArgument("target rank must be positive");
    }
    tol_.validate();
}

void GramTracker::append(const Block& block) {
    const Matrix& A = block.data();
    check_rows(rows_, A);
    total_energy_sq_ += block.energy_sq();
    member_ids_.push_back(block.id());
    if (block.energy_sq() == 0.0) {
        return;
    }

    // A = Q Y + Q_res B
    Projection p = project_with_coeffs(basis_, A);
    const Matrix& Y = p.coeffs;
    const Matrix Qres = extension_basis(basis_, p.residual, std::sqrt(block.energy_sq()), tol_);
    const Matrix B = Qres.transpose() * p.residual;
    unexplained_energy_sq_ += (p.residual - Qres * B).squaredNorm();

    const Eigen::Index k = basis_.cols();
    const Eigen::Index e = Qres.cols();
    Matrix S(k + e, k + e);
    S.topLeftCorner(k, k) = gram_ + Y * Y.transpose();
    if (e > 0) {
        S.topRightCorner(k, e) = Y * B.transpose();
        S.bottomLeftCorner(e, k) = S.topRightCorner(k, e).transpose();
        S.bottomRightCorner(e, e) = B * B.transpose();
    }
    gram_ = std::move(S);
    append_columns(basis_, Qres);
}

void GramTracker::truncate() {
    if (gram_.rows() == 0) {
        return;
    }
    const SymEig eig = sym_eig_desc(gram_, tol_);
    const auto k = static_cast<std::size_t>(gram_.rows());
    const std::size_t keep = std::min(k, target_rank_);
    for (std::size_t j = keep; j < k; ++j) {
        discarded_energy_ += eig.lambda[j];
        unexplained_energy_sq_ += eig.lambda[j];
    }
    const auto kk = static_cast<Eigen::Index>(keep);
    basis_ = basis_ * eig.V.leftCols(kk);
    gram_ = Matrix::Zero(kk, kk);
    for (Eigen::Index j = 0; j < kk; ++j) {
        gram_(j, j) = eig.lambda[static_cast<std::size_t>(j)];
    }
}

Spectrum GramTracker::eigenvalues() const {
    if (gram_.rows() == 0) {
        return {};
    }
    return sym_eig_desc(gram_, tol_).lambda;
}

Spectrum GramTracker::sigma_tilde() const {
    std::vector<double> vals;
    const Spectrum lambda = eigenvalues();
    for (double lam : lambda.values()) {
        vals.push_back(std::sqrt(lam));
    }
    if (vals.size() < target_rank_) {
        vals.resize(target_rank_, 0.0);
    }
    return Spectrum(std::move(vals));
}

double GramTracker::residual_norm_of(const Matrix& A) const {
    check_rows(rows_, A);
    return project_residual(basis_, A).norm();
}

Matrix GramTracker::gram() const {
    if (basis_.cols() == 0) {
        return Matrix::Zero(rows_, rows_);
    }
    return basis_ * gram_ * basis_.transpose();
}

BoundValue residual_bound(const ResidualTracker& t, std::size_t r) {
    double err_sq = t.unpooled_energy_sq();
    const std::vector<double>& mu_sq = t.mu_sq();
    for (std::size_t j = r; j < mu_sq.size(); ++j) {
        err_sq += mu_sq[j];
    }
    return BoundValue::make(BoundKind::residual, err_sq, t.total_energy_sq());
}

BoundValue plugin_estimate(const GramTracker& t, std::size_t r) {
    double err_sq = t.unexplained_energy_sq();
    const Spectrum lambda = t.eigenvalues();
    for (std::size_t j = r; j < lambda.size(); ++j) {
        err_sq += lambda[j];
    }
    return BoundValue::make(BoundKind::plugin, err_sq, t.total_energy_sq());
}

ResidualTracker residual_append(ResidualTracker t, const Block& block) {
    t.append(block);
    return t;
}

GramTracker gram_append(GramTracker t, const Block& block) {
    t.append(block);
    return t;
}

GramTracker gram_truncate(GramTracker t) {
    t.truncate();
    return t;
}

}  // namespace lrc
