#pragma once
//
// Seeded synthetic collections and the deterministic random source shared by
// the generators and the benchmark protocols.
//

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "lrcluster/collection.hpp"

namespace lrc {

// Uniform and normal variates derived from mt19937_64 by fixed formulas, so a
// seed produces the same stream with every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    // [0, 1)
    double uniform();
    // Box-Muller
    double normal();
    // [0, n)
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

    Matrix gaussian(Eigen::Index rows, Eigen::Index cols);
    // rows x cols with orthonormal columns (cols <= rows).
    Matrix orthonormal(Eigen::Index rows, Eigen::Index cols);

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Child seed for (a, b) under `seed`; independent of how many other children exist.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept;

enum class Profile { gaussian, shared_subspace, decaying_spectrum, nested, orthogonal_families };

std::string_view to_string(Profile p) noexcept;
Profile profile_from_string(std::string_view name);

struct GenConfig {
    Profile profile = Profile::gaussian;
    std::size_t count = 8;
    std::size_t rows = 32;
    std::size_t cols = 4;
    std::uint64_t seed = 0;
    std::size_t true_rank = 4;  // shared_subspace
    double alpha = 1.0;         // decaying_spectrum
};

// gaussian             iid N(0,1) entries
// shared_subspace      U C_i, one random m x true_rank orthonormal U
// decaying_spectrum    U_i diag(j^-alpha) V_i^T with random orthonormal factors
// nested               A_1 Gaussian, A_i = A_1 X_i (ranges nested in range(A_1))
// orthogonal_families  Q_i C_i with mutually orthogonal Q_i (needs count*cols <= rows)
Collection generate(const GenConfig& config);

// "b0007"-style ids; zero padded so lexicographic order matches index order.
std::string block_name(std::size_t index, std::size_t count);

}  // namespace lrc
