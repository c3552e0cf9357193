#pragma once
//
// Dense real linear-algebra kernels. All numerical tolerances of the library
// live here; the modules above treat these routines as exact math.
//

#include <cstddef>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace lrc {

// Column-major, 64-bit. Horizontal concatenation appends contiguous storage.
using Matrix = Eigen::MatrixXd;

// Non-increasing list of non-negative reals (singular values, sqrt-eigenvalues).
class Spectrum {
public:
    Spectrum() = default;

    // Sorts descending and validates non-negativity.
    explicit Spectrum(std::vector<double> values);

    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }
    double operator[](std::size_t i) const { return values_[i]; }

    // Value i, or 0 past the end.
    double at_or_zero(std::size_t i) const noexcept { return i < values_.size() ? values_[i] : 0.0; }

    // Sum of squares of the first k values (fewer if the spectrum is shorter).
    double head_energy_sq(std::size_t k) const noexcept;

    // First k values, zero padded.
    Spectrum top(std::size_t k) const;

    friend bool operator==(const Spectrum&, const Spectrum&) = default;

private:
    std::vector<double> values_;
};

struct Tolerances {
    // Directions with pivot norm <= rank_tol_factor * max(rows, cols) * sigma_max are dropped.
    double rank_tol_factor = 1e2 * std::numeric_limits<double>::epsilon();
    // Eigenvalues in [-eig_clamp * lambda_max, 0) are clamped to zero.
    double eig_clamp = 1e-12;

    // Throws InvalidArgument unless both lie in (0, 1e-3).
    void validate() const;
};

struct ThinSvd {
    Matrix U;    // rows x k, k = min(rows, cols)
    Spectrum S;  // k values
    Matrix V;    // cols x k
};

struct SymEig {
    Spectrum lambda;  // eigenvalues, non-increasing, clamped
    Matrix V;         // orthonormal eigenvectors, column j pairs with lambda[j]
};

// Throws InvalidArgument if any entry is NaN or infinite.
void require_finite(const Matrix& M, const char* what);

// Thin SVD M = U diag(S) V^T. Requires >= 1 column. Throws NumericalError
// carrying the dimensions if the iteration does not converge.
ThinSvd thin_svd(const Matrix& M);

// Singular values only.
Spectrum singular_values(const Matrix& M);

// Eigen-decomposition of a symmetric PSD matrix, descending order.
// Throws NumericalError on an eigenvalue below -eig_clamp * lambda_max.
SymEig sym_eig_desc(const Matrix& S, const Tolerances& tol = {});

// rank_tol_factor * max(rows, cols) * scale
double rank_threshold(const Tolerances& tol, Eigen::Index rows, Eigen::Index cols, double scale) noexcept;

// Orthonormal basis of the numerical range of M (may have zero columns).
Matrix orthonormal_basis(const Matrix& M, const Tolerances& tol = {});

// As above, but the rank threshold is measured against max(sigma_max(M), scale).
// Residuals use the norm of the unprojected block as scale so that rounding
// noise left after projection is not promoted to new directions.
Matrix orthonormal_basis(const Matrix& M, const Tolerances& tol, double scale);

// R = (I - Q Q^T) A with one re-orthogonalization pass.
Matrix project_residual(const Matrix& Q, const Matrix& A);

struct Projection {
    Matrix coeffs;    // Y with A = Q Y + R
    Matrix residual;  // R, orthogonal to range(Q)
};

// Same as project_residual but also returns the accumulated coefficients Y.
Projection project_with_coeffs(const Matrix& Q, const Matrix& A);

double frobenius_sq(const Matrix& M) noexcept;

// (sum_{j>r} sigma_j(M)^2)^{1/2} from a full SVD of M.
double exact_trunc_error(const Matrix& M, std::size_t r);

// Horizontal concatenation [A_1, ..., A_k]; all blocks must share the row count.
Matrix hconcat(const std::vector<const Matrix*>& blocks);

}  // namespace lrc
