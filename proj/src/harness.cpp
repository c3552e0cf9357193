#include "lrcluster/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

#include "lrcluster/error.hpp"
#include "lrcluster/synth.hpp"
#include "lrcluster/tracker.hpp"

namespace lrc {

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

}  // namespace

VerifyReport verify(const Collection& coll, const CompressedStore& store, const Partition* plan) {
    validate_store_cover(store, coll);
    if (plan && plan->clusters.size() != store.clusters.size()) {
        throw InvalidArgument("plan and store have different cluster counts");
    }
    VerifyReport report;
    double tail_sum = 0.0;
    for (std::size_t c = 0; c < store.clusters.size(); ++c) {
        const CompressedCluster& cl = store.clusters[c];
        VerifyRow row;
        row.cluster_id = cl.id;
        row.rank = cl.rank;
        double err_sq = 0.0;
        double energy = 0.0;
        for (const StoreMember& mem : cl.members) {
            const Block& b = coll.at(mem.block_id);
            row.members.push_back(mem.block_id);
            err_sq += (b.data() - reconstruct_block(store, mem.block_id)).squaredNorm();
            energy += b.energy_sq();
        }
        row.exact_error = std::sqrt(err_sq);
        row.relative_error = energy > 0.0 ? std::sqrt(err_sq / energy) : 0.0;
        if (plan) {
            const Cluster& pc = plan->clusters[c];
            if (pc.id != cl.id || pc.members != row.members) {
                throw InvalidArgument("plan cluster '" + pc.id + "' does not match store cluster '" +
                                      cl.id + "'");
            }
            row.predicted_error = pc.predicted.error;
            row.slack = pc.predicted.error - row.exact_error;
        }
        tail_sum += err_sq;
        report.total_energy_sq += energy;
        report.rows.push_back(std::move(row));
    }
    report.global_relative_error =
        report.total_energy_sq > 0.0 ? std::sqrt(tail_sum / report.total_energy_sq) : 0.0;
    report.memory_footprint = memory_footprint(store);
    report.parameter_count = coll.parameter_count();
    report.compression_ratio = compression_ratio(coll, store);
    return report;
}

std::string to_csv(const VerifyReport& report) {
    std::ostringstream os;
    os << "cluster_id,members,rank,exact_error,relative_error,predicted_error,slack\n";
    for (const VerifyRow& row : report.rows) {
        os << row.cluster_id << ',' << join(row.members, ';') << ',' << row.rank << ','
           << format_real(row.exact_error) << ',' << format_real(row.relative_error) << ','
           << (row.predicted_error ? format_real(*row.predicted_error) : "") << ','
           << (row.slack ? format_real(*row.slack) : "") << '\n';
    }
    os << "# global_relative_error=" << format_real(report.global_relative_error) << '\n'
       << "# memory_footprint=" << report.memory_footprint << '\n'
       << "# parameter_count=" << report.parameter_count << '\n'
       << "# compression_ratio=" << format_real(report.compression_ratio) << '\n';
    return os.str();
}

std::vector<std::size_t> sample_subset(std::size_t population, std::size_t size,
                                       std::uint64_t seed, std::size_t trial) {
    if (size > population) {
        throw InvalidArgument("subset size " + std::to_string(size) + " exceeds collection size " +
                              std::to_string(population));
    }
    Rng rng(derive_seed(seed, size, trial));
    std::vector<std::size_t> idx(population);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < size; ++i) {
        std::swap(idx[i], idx[i + rng.below(population - i)]);
    }
    idx.resize(size);
    return idx;
}

std::vector<SlackRecord> bench_slack(const Collection& coll, const SlackConfig& config) {
    if (config.trials < 1) {
        throw InvalidArgument("bench-slack needs at least one trial");
    }
    if (config.rank < 1) {
        throw InvalidArgument("bench-slack needs rank >= 1");
    }
    for (std::size_t s : config.sizes) {
        if (s < 1 || s > coll.size()) {
            throw InvalidArgument("cluster size " + std::to_string(s) + " is outside [1, " +
                                  std::to_string(coll.size()) + "]");
        }
    }
    const std::size_t r = config.rank;
    std::vector<SlackRecord> records;
    for (std::size_t size : config.sizes) {
        for (std::size_t trial = 0; trial < config.trials; ++trial) {
            std::vector<std::size_t> subset = sample_subset(coll.size(), size, config.seed, trial);
            std::sort(subset.begin(), subset.end(), [&](std::size_t a, std::size_t b) {
                if (coll[a].energy_sq() != coll[b].energy_sq()) {
                    return coll[a].energy_sq() > coll[b].energy_sq();
                }
                return coll[a].id() < coll[b].id();
            });

            std::vector<std::string> ids;
            std::vector<BlockSummary> summaries;
            ResidualTracker residual(coll.rows());
            GramTracker gram(coll.rows(), r);
            for (std::size_t i : subset) {
                ids.push_back(coll[i].id());
                summaries.push_back(summarize(coll[i], r));
                residual.append(coll[i]);
                gram.append(coll[i]);
                gram.truncate();
            }
            const BoundValue exact = exact_bound(coll.concat(ids), r);
            const BoundValue predicted[] = {
                weyl_bound(summaries, r),
                residual_bound(residual, r),
                plugin_estimate(gram, r),
            };
            for (const BoundValue& p : predicted) {
                records.push_back({trial, size, p.kind, p.error, exact.error, slack(p, exact)});
            }
        }
    }
    return records;
}

std::string to_csv(const std::vector<SlackRecord>& records) {
    std::ostringstream os;
    os << "cluster_size,trial,estimator,predicted,exact,slack\n";
    for (const SlackRecord& rec : records) {
        os << rec.cluster_size << ',' << rec.trial << ',' << to_string(rec.estimator) << ','
           << format_real(rec.predicted) << ',' << format_real(rec.exact) << ','
           << format_real(rec.slack) << '\n';
    }
    return os.str();
}

std::vector<SweepRecord> sweep(const Collection& coll, const SweepConfig& config) {
    if (config.epsilons.empty() || config.ranks.empty()) {
        throw InvalidArgument("sweep needs non-empty epsilon and rank grids");
    }
    std::vector<SweepRecord> records;
    for (double eps : config.epsilons) {
        for (std::size_t r : config.ranks) {
            ClusteringRequest req;
            req.algorithm = config.algorithm;
            req.budget = {eps, r};
            req.sort = config.sort;
            req.k = config.k;
            req.seed = config.seed;

            const auto t0 = std::chrono::steady_clock::now();
            const Partition partition = run_clustering(coll, req);
            const CompressedStore store = compress(coll, partition);
            const VerifyReport report = verify(coll, store, &partition);
            const auto t1 = std::chrono::steady_clock::now();

            SweepRecord rec;
            rec.epsilon = eps;
            rec.rank = r;
            rec.algorithm = std::string(to_string(config.algorithm));
            rec.sort_mode = config.sort ? std::string(to_string(*config.sort))
                            : (config.algorithm == Algorithm::residual ||
                               config.algorithm == Algorithm::approx)
                                ? std::string(to_string(SortMode::frobenius))
                                : "-";
            rec.compression_ratio = report.compression_ratio;
            rec.relative_error = report.global_relative_error;
            rec.wall_time_ms =
                config.timing ? std::chrono::duration<double, std::milli>(t1 - t0).count() : 0.0;
            records.push_back(std::move(rec));
        }
    }
    return records;
}

bool ratio_monotone_in_epsilon(const std::vector<SweepRecord>& records) {
    std::map<std::size_t, std::vector<const SweepRecord*>> by_rank;
    for (const SweepRecord& rec : records) {
        by_rank[rec.rank].push_back(&rec);
    }
    for (auto& [rank, cells] : by_rank) {
        std::stable_sort(cells.begin(), cells.end(),
                         [](const SweepRecord* a, const SweepRecord* b) { return a->epsilon < b->epsilon; });
        for (std::size_t i = 1; i < cells.size(); ++i) {
            if (cells[i]->compression_ratio < cells[i - 1]->compression_ratio) {
                return false;
            }
        }
    }
    return true;
}

std::string to_csv(const std::vector<SweepRecord>& records, bool certified) {
    std::ostringstream os;
    os << "epsilon,rank,algorithm,sort_mode,compression_ratio,relative_error,wall_time_ms\n";
    for (const SweepRecord& rec : records) {
        os << format_real(rec.epsilon) << ',' << rec.rank << ',' << rec.algorithm << ','
           << rec.sort_mode << ',' << format_real(rec.compression_ratio) << ','
           << format_real(rec.relative_error) << ',' << format_real(rec.wall_time_ms) << '\n';
    }
    if (certified) {
        os << "# monotone_in_epsilon=" << (ratio_monotone_in_epsilon(records) ? "yes" : "no") << '\n';
    }
    return os.str();
}

}  // namespace lrc
