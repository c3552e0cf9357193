#include "lrcluster/synth.hpp"

#include <cmath>
#include <numbers>

#include "lrcluster/error.hpp"

namespace lrc {

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) {
        u1 = uniform();
    }
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

Matrix Rng::gaussian(Eigen::Index rows, Eigen::Index cols) {
    Matrix M(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            M(i, j) = normal();
        }
    }
    return M;
}

Matrix Rng::orthonormal(Eigen::Index rows, Eigen::Index cols) {
    if (cols > rows) {
        throw InvalidArgument("orthonormal: more columns than rows");
    }
    const Matrix G = gaussian(rows, cols);
    Eigen::HouseholderQR<Matrix> qr(G);
    Matrix Q = qr.householderQ() * Matrix::Identity(rows, cols);
    // Sign convention making Q independent of the QR implementation's choice.
    const Matrix R = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < cols; ++j) {
        if (R(j, j) < 0.0) {
            Q.col(j) = -Q.col(j);
        }
    }
    return Q;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept {
    return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ b);
}

std::string_view to_string(Profile p) noexcept {
    switch (p) {
        case Profile::gaussian: return "gaussian";
        case Profile::shared_subspace: return "shared-subspace";
        case Profile::decaying_spectrum: return "decaying-spectrum";
        case Profile::nested: return "nested";
        case Profile::orthogonal_families: return "orthogonal-families";
    }
    return "gaussian";
}

Profile profile_from_string(std::string_view name) {
    for (Profile p : {Profile::gaussian, Profile::shared_subspace, Profile::decaying_spectrum,
                      Profile::nested, Profile::orthogonal_families}) {
        if (name == to_string(p)) {
            return p;
        }
    }
    throw InvalidArgument("unknown profile '" + std::string(name) + "'");
}

std::string block_name(std::size_t index, std::size_t count) {
    std::size_t width = 4;
    for (std::size_t n = count; n >= 10000; n /= 10) {
        ++width;
    }
    std::string digits = std::to_string(index);
    if (digits.size() < width) {
        digits.insert(0, width - digits.size(), '0');
    }
    return "b" + digits;
}

Collection generate(const GenConfig& cfg) {
    if (cfg.count == 0 || cfg.rows == 0 || cfg.cols == 0) {
        throw InvalidArgument("count, rows and cols must be positive");
    }
    const auto m = static_cast<Eigen::Index>(cfg.rows);
    const auto n = static_cast<Eigen::Index>(cfg.cols);
    Rng rng(cfg.seed);
    std::vector<Block> blocks;
    blocks.reserve(cfg.count);
    auto push = [&](Matrix A) {
        blocks.emplace_back(block_name(blocks.size(), cfg.count), std::move(A));
    };

    switch (cfg.profile) {
        case Profile::gaussian:
            for (std::size_t i = 0; i < cfg.count; ++i) {
                push(rng.gaussian(m, n));
            }
            break;
        case Profile::shared_subspace: {
            if (cfg.true_rank < 1 || cfg.true_rank > cfg.rows) {
                throw InvalidArgument("shared-subspace needs 1 <= true rank <= rows");
            }
            const auto k = static_cast<Eigen::Index>(cfg.true_rank);
            const Matrix U = rng.orthonormal(m, k);
            for (std::size_t i = 0; i < cfg.count; ++i) {
                push(U * rng.gaussian(k, n));
            }
            break;
        }
        case Profile::decaying_spectrum: {
            if (!(cfg.alpha >= 0.0) || !std::isfinite(cfg.alpha)) {
                throw InvalidArgument("decaying-spectrum needs a finite alpha >= 0");
            }
            const Eigen::Index k = std::min(m, n);
            Eigen::VectorXd s(k);
            for (Eigen::Index j = 0; j < k; ++j) {
                s(j) = std::pow(static_cast<double>(j + 1), -cfg.alpha);
            }
            for (std::size_t i = 0; i < cfg.count; ++i) {
                const Matrix U = rng.orthonormal(m, k);
                const Matrix V = rng.orthonormal(n, k);
                push(U * s.asDiagonal() * V.transpose());
            }
            break;
        }
        case Profile::nested: {
            const Matrix A1 = rng.gaussian(m, n);
            push(A1);
            const double shrink = 0.5 / std::sqrt(static_cast<double>(n));
            for (std::size_t i = 1; i < cfg.count; ++i) {
                push(A1 * (shrink * rng.gaussian(n, n)));
            }
            break;
        }
        case Profile::orthogonal_families: {
            if (cfg.count * cfg.cols > cfg.rows) {
                throw InvalidArgument("orthogonal-families needs count * cols <= rows");
            }
            const Matrix Q = rng.orthonormal(m, static_cast<Eigen::Index>(cfg.count) * n);
            for (std::size_t i = 0; i < cfg.count; ++i) {
                const double scale = 1.0 / static_cast<double>(i + 1);
                push(Q.middleCols(static_cast<Eigen::Index>(i) * n, n) * (scale * rng.gaussian(n, n)));
            }
            break;
        }
    }
    return Collection(std::move(blocks));
}

}  // namespace lrc
