#include "lrcluster/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>

#include "lrcluster/error.hpp"

namespace lrc {

namespace {

std::string dims(const Matrix& M) {
    std::ostringstream os;
    os << M.rows() << "x" << M.cols();
    return os.str();
}

// Deterministic column signs: the entry of largest magnitude is made positive.
void canonicalize_signs(Matrix& Q) {
    for (Eigen::Index j = 0; j < Q.cols(); ++j) {
        Eigen::Index imax = 0;
        Q.col(j).cwiseAbs().maxCoeff(&imax);
        if (Q(imax, j) < 0.0) {
            Q.col(j) = -Q.col(j);
        }
    }
}

}  // namespace

Spectrum::Spectrum(std::vector<double> values) : values_(std::move(values)) {
    for (double v : values_) {
        if (!std::isfinite(v) || v < 0.0) {
            throw InvalidArgument("spectrum values must be finite and non-negative");
        }
    }
    std::sort(values_.begin(), values_.end(), std::greater<>());
}

double Spectrum::head_energy_sq(std::size_t k) const noexcept {
    double acc = 0.0;
    const std::size_t n = std::min(k, values_.size());
    for (std::size_t i = 0; i < n; ++i) {
        acc += values_[i] * values_[i];
    }
    return acc;
}

Spectrum Spectrum::top(std::size_t k) const {
    std::vector<double> out(k, 0.0);
    std::copy_n(values_.begin(), std::min(k, values_.size()), out.begin());
    Spectrum s;
    s.values_ = std::move(out);
    return s;
}

void Tolerances::validate() const {
    if (!(rank_tol_factor > 0.0 && rank_tol_factor < 1e-3)) {
        throw InvalidArgument("rank_tol_factor must lie in (0, 1e-3)");
    }
    if (!(eig_clamp > 0.0 && eig_clamp < 1e-3)) {
        throw InvalidArgument("eig_clamp must lie in (0, 1e-3)");
    }
}

void require_finite(const Matrix& M, const char* what) {
    if (!M.allFinite()) {
        throw InvalidArgument(std::string(what) + ": matrix contains non-finite entries");
    }
}

ThinSvd thin_svd(const Matrix& M) {
    if (M.cols() < 1 || M.rows() < 1) {
        throw InvalidArgument("thin_svd: matrix " + dims(M) + " must have at least one row and column");
    }
    Eigen::BDCSVD<Matrix> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) {
        throw NumericalError("thin_svd: SVD did not converge for " + dims(M) + " matrix");
    }
    const Eigen::VectorXd& s = svd.singularValues();
    std::vector<double> vals(s.data(), s.data() + s.size());
    for (double& v : vals) {
        v = std::max(v, 0.0);
    }
    return ThinSvd{svd.matrixU(), Spectrum(std::move(vals)), svd.matrixV()};
}

Spectrum singular_values(const Matrix& M) {
    if (M.cols() == 0 || M.rows() == 0) {
        return {};
    }
    Eigen::BDCSVD<Matrix> svd(M);
    if (svd.info() != Eigen::Success) {
        throw NumericalError("singular_values: SVD did not converge for " + dims(M) + " matrix");
    }
    const Eigen::VectorXd& s = svd.singularValues();
    std::vector<double> vals(s.data(), s.data() + s.size());
    for (double& v : vals) {
        v = std::max(v, 0.0);
    }
    return Spectrum(std::move(vals));
}

SymEig sym_eig_desc(const Matrix& S, const Tolerances& tol) {
    if (S.rows() != S.cols()) {
        throw InvalidArgument("sym_eig_desc: matrix " + dims(S) + " is not square");
    }
    const Eigen::Index n = S.rows();
    if (n == 0) {
        return {};
    }
    require_finite(S, "sym_eig_desc");
    const double scale = S.cwiseAbs().maxCoeff();
    if ((S - S.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
        throw InvalidArgument("sym_eig_desc: matrix is not symmetric");
    }
    const Matrix sym = 0.5 * (S + S.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
    if (es.info() != Eigen::Success) {
        throw NumericalError("sym_eig_desc: eigensolver did not converge for " + dims(S) + " matrix");
    }
    const Eigen::VectorXd& ev = es.eigenvalues();  // ascending
    const double lmax = ev.cwiseAbs().maxCoeff();
    std::vector<double> vals(static_cast<std::size_t>(n));
    Matrix V(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const Eigen::Index src = n - 1 - j;
        double lam = ev(src);
        if (lam < 0.0) {
            if (lam < -tol.eig_clamp * lmax) {
                std::ostringstream os;
                os << "sym_eig_desc: eigenvalue " << lam << " is significantly negative (lambda_max "
                   << lmax << ")";
                throw NumericalError(os.str());
            }
            lam = 0.0;
        }
        vals[static_cast<std::size_t>(j)] = lam;
        V.col(j) = es.eigenvectors().col(src);
    }
    return SymEig{Spectrum(std::move(vals)), std::move(V)};
}

double rank_threshold(const Tolerances& tol, Eigen::Index rows, Eigen::Index cols, double scale) noexcept {
    return tol.rank_tol_factor * static_cast<double>(std::max(rows, cols)) * scale;
}

Matrix orthonormal_basis(const Matrix& M, const Tolerances& tol) {
    return orthonormal_basis(M, tol, 0.0);
}

Matrix orthonormal_basis(const Matrix& M, const Tolerances& tol, double scale) {
    const Eigen::Index m = M.rows();
    const Eigen::Index n = M.cols();
    if (n == 0 || m == 0) {
        return Matrix(m, 0);
    }
    Eigen::ColPivHouseholderQR<Matrix> qr(M);
    const Eigen::Index p = std::min(m, n);
    const Matrix R = qr.matrixR().topRows(p).triangularView<Eigen::Upper>();
    const double sigma_max = singular_values(R).at_or_zero(0);
    if (sigma_max == 0.0) {
        return Matrix(m, 0);
    }
    const double threshold = rank_threshold(tol, m, n, std::max(sigma_max, scale));
    Eigen::Index rank = 0;
    while (rank < p && std::abs(R(rank, rank)) > threshold) {
        ++rank;
    }
    Matrix Q = qr.householderQ() * Matrix::Identity(m, rank);
    canonicalize_signs(Q);
    return Q;
}

Projection project_with_coeffs(const Matrix& Q, const Matrix& A) {
    if (Q.rows() != A.rows()) {
        throw InvalidArgument("project_residual: basis has " + std::to_string(Q.rows()) +
                              " rows, block has " + std::to_string(A.rows()));
    }
    if (Q.cols() == 0) {
        return Projection{Matrix(0, A.cols()), A};
    }
    if (Q.cols() >= Q.rows()) {
        // Full basis: the residual is identically zero.
        return Projection{Q.transpose() * A, Matrix::Zero(A.rows(), A.cols())};
    }
    Matrix Y = Q.transpose() * A;
    Matrix R = A - Q * Y;
    const Matrix Y2 = Q.transpose() * R;
    R.noalias() -= Q * Y2;
    Y += Y2;
    return Projection{std::move(Y), std::move(R)};
}

Matrix project_residual(const Matrix& Q, const Matrix& A) {
    return project_with_coeffs(Q, A).residual;
}

double frobenius_sq(const Matrix& M) noexcept {
    return M.squaredNorm();
}

double exact_trunc_error(const Matrix& M, std::size_t r) {
    if (M.cols() == 0 || M.rows() == 0) {
        return 0.0;
    }
    if (r == 0) {
        return std::sqrt(frobenius_sq(M));
    }
    const Spectrum s = singular_values(M);
    double tail = 0.0;
    for (std::size_t j = r; j < s.size(); ++j) {
        tail += s[j] * s[j];
    }
    return std::sqrt(tail);
}

Matrix hconcat(const std::vector<const Matrix*>& blocks) {
    if (blocks.empty()) {
        return {};
    }
    const Eigen::Index m = blocks.front()->rows();
    Eigen::Index n = 0;
    for (const Matrix* b : blocks) {
        if (b->rows() != m) {
            throw InvalidArgument("hconcat: row count mismatch");
        }
        n += b->cols();
    }
    Matrix out(m, n);
    Eigen::Index off = 0;
    for (const Matrix* b : blocks) {
        out.middleCols(off, b->cols()) = *b;
        off += b->cols();
    }
    return out;
}

}  // namespace lrc
