#pragma once
//
// Verification and benchmark protocols behind the CLI. Reports are CSV with a
// fixed header row; trailing "# key=value" lines carry summary values.
//

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lrcluster/bounds.hpp"
#include "lrcluster/clustering.hpp"
#include "lrcluster/collection.hpp"
#include "lrcluster/plan.hpp"
#include "lrcluster/store.hpp"

namespace lrc {

// %.17g
std::string format_real(double v);

// ---- verify ---------------------------------------------------------------

struct VerifyRow {
    std::string cluster_id;
    std::vector<std::string> members;
    std::size_t rank = 0;
    double exact_error = 0.0;     // measured ||M_c - U_tilde V^T||_F
    double relative_error = 0.0;  // exact_error / ||M_c||_F
    std::optional<double> predicted_error;
    std::optional<double> slack;
};

struct VerifyReport {
    std::vector<VerifyRow> rows;
    double total_energy_sq = 0.0;
    double global_relative_error = 0.0;
    std::size_t memory_footprint = 0;
    std::size_t parameter_count = 0;
    double compression_ratio = 0.0;
};

// Measures the store against the original blocks. `plan`, when given, must
// name the same clusters and supplies the predicted errors.
VerifyReport verify(const Collection& coll, const CompressedStore& store,
                    const Partition* plan = nullptr);

std::string to_csv(const VerifyReport& report);

// ---- bench-slack ----------------------------------------------------------

struct SlackRecord {
    std::size_t trial = 0;
    std::size_t cluster_size = 0;
    BoundKind estimator = BoundKind::weyl;
    double predicted = 0.0;
    double exact = 0.0;
    double slack = 0.0;
};

struct SlackConfig {
    std::size_t rank = 4;
    std::vector<std::size_t> sizes;
    std::size_t trials = 10;
    std::uint64_t seed = 0;
};

// Per (size, trial): a uniform subset fed to all three estimators in
// norm-descending order and compared with the oracle error. Records are
// ordered by (size, trial, estimator = weyl, residual, plugin).
std::vector<SlackRecord> bench_slack(const Collection& coll, const SlackConfig& config);

// The sampled subset for (size, trial): derive_seed(seed, size, trial) drives
// a partial Fisher-Yates shuffle, so earlier trials never depend on later ones.
std::vector<std::size_t> sample_subset(std::size_t population, std::size_t size,
                                       std::uint64_t seed, std::size_t trial);

std::string to_csv(const std::vector<SlackRecord>& records);

// ---- sweep ----------------------------------------------------------------

struct SweepRecord {
    double epsilon = 0.0;
    std::size_t rank = 0;
    std::string algorithm;
    std::string sort_mode;  // "-" where not applicable
    double compression_ratio = 0.0;
    double relative_error = 0.0;
    double wall_time_ms = 0.0;
};

struct SweepConfig {
    Algorithm algorithm = Algorithm::max_norm;
    std::optional<SortMode> sort;
    std::vector<double> epsilons;
    std::vector<std::size_t> ranks;
    std::size_t k = 0;
    std::uint64_t seed = 0;
    bool timing = true;  // false writes 0 into wall_time_ms
};

// Cross product of (epsilon, rank), epsilon-major; each cell runs
// cluster -> compress -> verify.
std::vector<SweepRecord> sweep(const Collection& coll, const SweepConfig& config);

// Whether compression_ratio is non-decreasing in epsilon for every rank.
bool ratio_monotone_in_epsilon(const std::vector<SweepRecord>& records);

std::string to_csv(const std::vector<SweepRecord>& records, bool certified);

}  // namespace lrc
