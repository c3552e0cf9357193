#include <doctest.h>

#include <cmath>

#include "lrcluster/error.hpp"
#include "lrcluster/linalg.hpp"
#include "lrcluster/synth.hpp"
#include "oracle.hpp"

using namespace lrc;

namespace {

double orth_defect(const Matrix& Q) {
    if (Q.cols() == 0) return 0.0;
    return (Q.transpose() * Q - Matrix::Identity(Q.cols(), Q.cols())).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("thin_svd of the identity") {
    const ThinSvd svd = thin_svd(Matrix::Identity(3, 3));
    REQUIRE(svd.S.size() == 3);
    for (double s : svd.S.values()) CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("thin_svd of a scaled rank-one matrix") {
    Rng rng(11);
    Eigen::VectorXd u = rng.gaussian(6, 1);
    Eigen::VectorXd v = rng.gaussian(4, 1);
    u.normalize();
    v.normalize();
    const ThinSvd svd = thin_svd(5.0 * u * v.transpose());
    CHECK(svd.S[0] == doctest::Approx(5.0).epsilon(1e-13));
    for (std::size_t j = 1; j < svd.S.size(); ++j) CHECK(svd.S[j] < 1e-13);
    CHECK(svd.U.cols() == 4);
    CHECK(svd.V.cols() == 4);
}

TEST_CASE("thin_svd reconstructs a random matrix and agrees with Jacobi") {
    Rng rng(12);
    for (auto [m, n] : {std::pair{8, 5}, std::pair{5, 8}, std::pair{7, 7}}) {
        const Matrix M = rng.gaussian(m, n);
        const ThinSvd svd = thin_svd(M);
        const auto k = std::min(m, n);
        CHECK(svd.U.cols() == k);
        CHECK(svd.V.cols() == k);
        Eigen::VectorXd s(k);
        for (int j = 0; j < k; ++j) s(j) = svd.S[static_cast<std::size_t>(j)];
        const Matrix rebuilt = svd.U * s.asDiagonal() * svd.V.transpose();
        CHECK((rebuilt - M).norm() < 1e-10 * M.norm());
        CHECK(orth_defect(svd.U) < 1e-12);
        CHECK(orth_defect(svd.V) < 1e-12);

        const auto jac = oracle::jacobi_singular_values(M);
        for (std::size_t j = 0; j < jac.size(); ++j) {
            CHECK(svd.S[j] == doctest::Approx(jac[j]).epsilon(1e-12));
        }
    }
}

TEST_CASE("thin_svd rejects a matrix without columns") {
    CHECK_THROWS_AS(thin_svd(Matrix(3, 0)), InvalidArgument);
}

TEST_CASE("sym_eig_desc") {
    SUBCASE("diagonal") {
        Matrix S = Matrix::Zero(2, 2);
        S(0, 0) = 1.0;
        S(1, 1) = 4.0;
        const SymEig e = sym_eig_desc(S);
        CHECK(e.lambda[0] == doctest::Approx(4.0));
        CHECK(e.lambda[1] == doctest::Approx(1.0));
    }
    SUBCASE("construct then recover") {
        Rng rng(13);
        const Matrix Q = rng.orthonormal(3, 3);
        const Eigen::Vector3d lam(9.0, 4.0, 1.0);
        const Matrix S = Q * lam.asDiagonal() * Q.transpose();
        const SymEig e = sym_eig_desc(S);
        CHECK(e.lambda[0] == doctest::Approx(9.0).epsilon(1e-12));
        CHECK(e.lambda[1] == doctest::Approx(4.0).epsilon(1e-12));
        CHECK(e.lambda[2] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(orth_defect(e.V) < 1e-12);
        Eigen::VectorXd l(3);
        for (int j = 0; j < 3; ++j) l(j) = e.lambda[static_cast<std::size_t>(j)];
        CHECK((e.V * l.asDiagonal() * e.V.transpose() - S).norm() < 1e-12 * S.norm());
    }
    SUBCASE("zero matrix") {
        const SymEig e = sym_eig_desc(Matrix::Zero(2, 2));
        CHECK(e.lambda[0] == 0.0);
        CHECK(e.lambda[1] == 0.0);
    }
    SUBCASE("tiny negative eigenvalue is clamped") {
        Matrix S = Matrix::Zero(2, 2);
        S(0, 0) = 1.0;
        S(1, 1) = -1e-15;
        const SymEig e = sym_eig_desc(S);
        CHECK(e.lambda[1] == 0.0);
    }
    SUBCASE("indefinite input fails") {
        Matrix S = Matrix::Identity(2, 2);
        S(1, 1) = -0.5;
        CHECK_THROWS_AS(sym_eig_desc(S), NumericalError);
    }
    SUBCASE("non-symmetric input fails") {
        Matrix S = Matrix::Identity(2, 2);
        S(0, 1) = 0.5;
        CHECK_THROWS_AS(sym_eig_desc(S), InvalidArgument);
    }
}

TEST_CASE("orthonormal_basis") {
    SUBCASE("zero matrix has an empty basis") {
        CHECK(orthonormal_basis(Matrix::Zero(4, 2)).cols() == 0);
    }
    SUBCASE("duplicated column") {
        Matrix M = Matrix::Zero(3, 2);
        M(0, 0) = M(0, 1) = 1.0;
        const Matrix Q = orthonormal_basis(M);
        REQUIRE(Q.cols() == 1);
        CHECK(Q(0, 0) == doctest::Approx(1.0));
        CHECK(Q.col(0).tail(2).norm() < 1e-15);
    }
    SUBCASE("rank by construction") {
        Rng rng(14);
        const Matrix M = oracle::low_rank(rng, 6, 4, 2);
        const Matrix Q = orthonormal_basis(M);
        CHECK(Q.cols() == 2);
        CHECK(orth_defect(Q) < 1e-12);
        CHECK((M - Q * (Q.transpose() * M)).norm() < 1e-12 * M.norm());
    }
    SUBCASE("orthonormality over random shapes") {
        Rng rng(15);
        for (int t = 0; t < 50; ++t) {
            const auto m = static_cast<Eigen::Index>(1 + rng.below(20));
            const auto n = static_cast<Eigen::Index>(1 + rng.below(20));
            const auto k = static_cast<Eigen::Index>(1 + rng.below(static_cast<std::size_t>(std::min(m, n))));
            const Matrix Q = orthonormal_basis(oracle::low_rank(rng, m, n, k));
            CHECK(Q.cols() == k);
            CHECK(orth_defect(Q) <= 1e-12);
        }
    }
    SUBCASE("invalid tolerances are rejected") {
        Tolerances tol;
        tol.rank_tol_factor = 0.0;
        CHECK_THROWS_AS(tol.validate(), InvalidArgument);
        tol = {};
        tol.eig_clamp = 1e-2;
        CHECK_THROWS_AS(tol.validate(), InvalidArgument);
    }
}

TEST_CASE("project_residual") {
    Rng rng(16);
    SUBCASE("contained range") {
        const Matrix A = oracle::low_rank(rng, 8, 5, 3);
        const Matrix Q = orthonormal_basis(A);
        CHECK(project_residual(Q, A).norm() <= 1e-10 * A.norm());
    }
    SUBCASE("orthogonal input passes unchanged") {
        Matrix Q = Matrix::Zero(3, 1);
        Q(0, 0) = 1.0;
        Matrix A = Matrix::Zero(3, 3);
        A.row(1) << 1.0, 2.0, 3.0;
        CHECK(project_residual(Q, A) == A);
    }
    SUBCASE("empty basis") {
        const Matrix A = rng.gaussian(4, 2);
        CHECK(project_residual(Matrix(4, 0), A) == A);
    }
    SUBCASE("Pythagoras") {
        const Matrix Q = rng.orthonormal(8, 3);
        const Matrix A = rng.gaussian(8, 4);
        const Matrix R = project_residual(Q, A);
        const double lhs = A.squaredNorm();
        const double rhs = (Q * Q.transpose() * A).squaredNorm() + R.squaredNorm();
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
        CHECK((Q.transpose() * R).norm() < 1e-10 * A.norm());
    }
    SUBCASE("coefficients reproduce the block") {
        const Matrix Q = rng.orthonormal(7, 2);
        const Matrix A = rng.gaussian(7, 3);
        const Projection p = project_with_coeffs(Q, A);
        CHECK((Q * p.coeffs + p.residual - A).norm() < 1e-13 * A.norm());
    }
    SUBCASE("row mismatch") {
        CHECK_THROWS_AS(project_residual(rng.orthonormal(5, 2), rng.gaussian(4, 2)), InvalidArgument);
    }
}

TEST_CASE("frobenius_sq") {
    CHECK(frobenius_sq(Matrix::Identity(3, 3)) == 3.0);
    CHECK(frobenius_sq(Matrix::Zero(2, 4)) == 0.0);
    Matrix M(2, 2);
    M << 1, 2, 3, 4;
    CHECK(frobenius_sq(M) == 30.0);
}

TEST_CASE("exact_trunc_error") {
    Rng rng(17);
    const Matrix M = rng.gaussian(6, 4);
    CHECK(exact_trunc_error(M, 4) == 0.0);
    CHECK(exact_trunc_error(M, 9) == 0.0);
    CHECK(exact_trunc_error(M, 0) == doctest::Approx(M.norm()).epsilon(1e-14));
    Matrix D = Matrix::Zero(3, 3);
    D.diagonal() << 3.0, 2.0, 1.0;
    CHECK(exact_trunc_error(D, 1) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
}

TEST_CASE("Eckart-Young energy split holds for random matrices") {
    Rng rng(18);
    for (int t = 0; t < 40; ++t) {
        const auto m = static_cast<Eigen::Index>(1 + rng.below(12));
        const auto n = static_cast<Eigen::Index>(1 + rng.below(12));
        const Matrix M = rng.gaussian(m, n);
        const Spectrum s = singular_values(M);
        for (std::size_t r = 0; r <= s.size(); ++r) {
            const double e = exact_trunc_error(M, r);
            CHECK(e * e + s.head_energy_sq(r) == doctest::Approx(M.squaredNorm()).epsilon(1e-9));
            CHECK(e == doctest::Approx(oracle::jacobi_trunc_error(M, r)).epsilon(1e-9).scale(M.norm()));
        }
    }
}

TEST_CASE("appending columns never decreases a singular value") {
    Rng rng(19);
    for (int t = 0; t < 40; ++t) {
        const auto m = static_cast<Eigen::Index>(2 + rng.below(10));
        const Matrix M = rng.gaussian(m, static_cast<Eigen::Index>(1 + rng.below(8)));
        const Matrix B = rng.gaussian(m, static_cast<Eigen::Index>(1 + rng.below(8)));
        Matrix MB(m, M.cols() + B.cols());
        MB << M, B;
        const Spectrum before = singular_values(M);
        const Spectrum after = singular_values(MB);
        for (std::size_t j = 0; j < before.size(); ++j) {
            CHECK(after.at_or_zero(j) >= before[j] - 1e-10 * before[0]);
        }
    }
}

TEST_CASE("Spectrum") {
    const Spectrum s({1.0, 3.0, 2.0});
    CHECK(s.values() == std::vector<double>{3.0, 2.0, 1.0});
    CHECK(s.head_energy_sq(2) == 13.0);
    CHECK(s.top(5).values() == std::vector<double>{3.0, 2.0, 1.0, 0.0, 0.0});
    CHECK_THROWS_AS(Spectrum({-1.0}), InvalidArgument);
}
