#include "lrcluster/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "lrcluster/error.hpp"
#include "lrcluster/tracker.hpp"

namespace lrc {

void ErrorBudget::validate() const {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw InvalidArgument("epsilon must lie in (0, 1)");
    }
    if (target_rank < 1) {
        throw InvalidArgument("target rank must be at least 1");
    }
}

std::string_view to_string(SortMode mode) noexcept {
    return mode == SortMode::frobenius ? "frobenius" : "residual";
}

std::string_view to_string(Algorithm algorithm) noexcept {
    switch (algorithm) {
        case Algorithm::max_norm: return "max-norm";
        case Algorithm::residual: return "residual";
        case Algorithm::approx: return "approx";
        case Algorithm::random: return "random";
    }
    return "max-norm";
}

SortMode sort_mode_from_string(std::string_view name) {
    if (name == "frobenius") return SortMode::frobenius;
    if (name == "residual") return SortMode::residual;
    throw InvalidArgument("unknown sort mode '" + std::string(name) + "'");
}

Algorithm algorithm_from_string(std::string_view name) {
    if (name == "max-norm") return Algorithm::max_norm;
    if (name == "residual") return Algorithm::residual;
    if (name == "approx") return Algorithm::approx;
    if (name == "random") return Algorithm::random;
    throw InvalidArgument("unknown algorithm '" + std::string(name) + "'");
}

std::size_t Partition::block_count() const noexcept {
    std::size_t n = 0;
    for (const Cluster& c : clusters) {
        n += c.members.size();
    }
    return n;
}

namespace {

void require_nonempty(const Collection& coll) {
    if (coll.empty()) {
        throw InvalidArgument("cannot cluster an empty collection");
    }
}

// Block indices by decreasing energy, ties by ascending id.
std::vector<std::size_t> norm_descending(const Collection& coll) {
    std::vector<std::size_t> order(coll.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const Block& x = coll[a];
        const Block& y = coll[b];
        if (x.energy_sq() != y.energy_sq()) {
            return x.energy_sq() > y.energy_sq();
        }
        return x.id() < y.id();
    });
    return order;
}

std::string cluster_name(std::size_t i) {
    return "c" + std::to_string(i);
}

Cluster make_cluster(std::size_t index, const Collection& coll,
                     const std::vector<std::size_t>& members, BoundValue predicted,
                     std::size_t rank) {
    Cluster c;
    c.id = cluster_name(index);
    for (std::size_t i : members) {
        c.members.push_back(coll[i].id());
        c.cols += static_cast<std::size_t>(coll[i].cols());
    }
    c.rank = rank;
    c.predicted = predicted;
    return c;
}

// Candidate with the smallest (energy, id) among the open set.
std::size_t smallest_norm(const Collection& coll, const std::vector<std::size_t>& open) {
    return *std::min_element(open.begin(), open.end(), [&](std::size_t a, std::size_t b) {
        if (coll[a].energy_sq() != coll[b].energy_sq()) {
            return coll[a].energy_sq() < coll[b].energy_sq();
        }
        return coll[a].id() < coll[b].id();
    });
}

// Candidate with the smallest (residual norm, id) against the tracker basis.
template <class Tracker>
std::size_t smallest_residual(const Collection& coll, const std::vector<std::size_t>& open,
                              const Tracker& tracker) {
    std::size_t best = open.front();
    double best_norm = std::numeric_limits<double>::infinity();
    for (std::size_t i : open) {
        const double n = tracker.residual_norm_of(coll[i].data());
        if (n < best_norm || (n == best_norm && coll[i].id() < coll[best].id())) {
            best = i;
            best_norm = n;
        }
    }
    return best;
}

void erase_value(std::vector<std::size_t>& v, std::size_t x) {
    v.erase(std::find(v.begin(), v.end(), x));
}

// Shared control flow of the residual and approximate algorithms. `Model`
// supplies a fresh tracker, the tentative post-merge certificate and the
// commit step.
template <class Model>
Partition greedy_tracker_clustering(const Collection& coll, const ErrorBudget& budget,
                                    SortMode mode, const ClusterOptions& options,
                                    const Model& model) {
    require_nonempty(coll);
    budget.validate();
    Partition out;
    out.rows = coll.rows();

    // Remaining blocks, kept in norm-descending order.
    std::vector<std::size_t> remaining = norm_descending(coll);
    while (!remaining.empty()) {
        const std::size_t anchor = remaining.front();
        remaining.erase(remaining.begin());

        auto tracker = model.start(coll[anchor]);
        std::vector<std::size_t> members{anchor};
        std::vector<std::size_t> open = remaining;

        while (!open.empty()) {
            const std::size_t cand = mode == SortMode::frobenius
                                         ? smallest_norm(coll, open)
                                         : smallest_residual(coll, open, tracker);
            erase_value(open, cand);
            if (coll[cand].energy_sq() == 0.0) {
                tracker.append(coll[cand]);
                members.push_back(cand);
                continue;
            }
            auto tentative = model.extend(tracker, coll[cand]);
            if (model.certificate(tentative).relative <= budget.epsilon) {
                tracker = std::move(tentative);
                members.push_back(cand);
            } else if (!options.skip_rejected) {
                break;
            }
        }

        for (std::size_t i : members) {
            if (i != anchor) {
                erase_value(remaining, i);
            }
        }
        out.clusters.push_back(make_cluster(out.clusters.size(), coll, members,
                                            model.certificate(tracker), budget.target_rank));
    }
    return assign_rank(std::move(out), budget.target_rank);
}

struct ResidualModel {
    Eigen::Index rows;
    std::size_t r;
    Tolerances tol;

    ResidualTracker start(const Block& anchor) const {
        ResidualTracker t(rows, tol);
        t.append(anchor);
        return t;
    }
    ResidualTracker extend(const ResidualTracker& t, const Block& b) const {
        return residual_append(t, b);
    }
    BoundValue certificate(const ResidualTracker& t) const {
        return residual_bound(t, r);
    }
};

struct GramModel {
    Eigen::Index rows;
    std::size_t r;
    Tolerances tol;

    GramTracker start(const Block& anchor) const {
        GramTracker t(rows, r, tol);
        t.append(anchor);
        t.truncate();
        return t;
    }
    GramTracker extend(const GramTracker& t, const Block& b) const {
        return gram_truncate(gram_append(t, b));
    }
    BoundValue certificate(const GramTracker& t) const {
        return plugin_estimate(t, r);
    }
};

}  // namespace

Partition cluster_max_norm(const Collection& coll, const ErrorBudget& budget) {
    require_nonempty(coll);
    budget.validate();
    const std::size_t r = budget.target_rank;
    const auto m = static_cast<std::size_t>(coll.rows());
    auto width = [&](std::size_t cols) { return std::min(cols, m); };

    Partition out;
    out.rows = coll.rows();
    std::vector<std::size_t> remaining = norm_descending(coll);
    std::size_t front = 0;
    std::size_t back = remaining.size();  // remaining[front, back) is unassigned

    while (front < back) {
        std::vector<std::size_t> members{remaining[front]};
        const Block& anchor = coll[remaining[front]];
        ++front;

        // Head: largest blocks while the combined width stays within r.
        std::size_t head_cols = static_cast<std::size_t>(anchor.cols());
        double head_energy = anchor.energy_sq();
        while (front < back &&
               width(head_cols + static_cast<std::size_t>(coll[remaining[front]].cols())) <= r) {
            head_cols += static_cast<std::size_t>(coll[remaining[front]].cols());
            head_energy += coll[remaining[front]].energy_sq();
            members.push_back(remaining[front]);
            ++front;
        }
        // Energy a rank-r approximation may lose. A head of width <= r loses
        // nothing; a single wide anchor loses the tail of its spectrum.
        double lost = 0.0;
        if (width(head_cols) > r) {
            const Spectrum s = singular_values(anchor.data());
            for (std::size_t j = r; j < s.size(); ++j) {
                lost += s[j] * s[j];
            }
        }

        // Tail: smallest remaining blocks while the certificate holds.
        double total = head_energy;
        while (front < back) {
            const Block& cand = coll[remaining[back - 1]];
            const double e = cand.energy_sq();
            if (e != 0.0 && BoundValue::make(BoundKind::weyl, lost + e, total + e).relative >
                                budget.epsilon) {
                break;
            }
            total += e;
            lost += e;
            members.push_back(remaining[back - 1]);
            --back;
        }
        out.clusters.push_back(make_cluster(out.clusters.size(), coll, members,
                                            BoundValue::make(BoundKind::weyl, lost, total), r));
    }
    return assign_rank(std::move(out), r);
}

Partition cluster_residual(const Collection& coll, const ErrorBudget& budget, SortMode mode,
                           const ClusterOptions& options) {
    return greedy_tracker_clustering(coll, budget, mode, options,
                                     ResidualModel{coll.rows(), budget.target_rank, options.tol});
}

Partition cluster_approx(const Collection& coll, const ErrorBudget& budget, SortMode mode,
                         const ClusterOptions& options) {
    return greedy_tracker_clustering(coll, budget, mode, options,
                                     GramModel{coll.rows(), budget.target_rank, options.tol});
}

Partition cluster_random(const Collection& coll, std::size_t k, std::uint64_t seed,
                         std::size_t target_rank) {
    require_nonempty(coll);
    if (k < 1 || k > coll.size()) {
        throw InvalidArgument("random clustering needs 1 <= k <= block count (k = " +
                              std::to_string(k) + ", blocks = " + std::to_string(coll.size()) + ")");
    }
    if (target_rank < 1) {
        throw InvalidArgument("target rank must be at least 1");
    }
    // mt19937_64 output is fixed by the standard; the modulo map keeps the
    // assignment identical across standard libraries.
    std::mt19937_64 rng(seed);
    std::vector<std::vector<std::size_t>> groups(k);
    for (std::size_t i = 0; i < coll.size(); ++i) {
        groups[rng() % k].push_back(i);
    }
    // Fill empty clusters with the last block of the largest cluster.
    for (auto& g : groups) {
        if (!g.empty()) {
            continue;
        }
        auto donor = std::max_element(groups.begin(), groups.end(),
                                      [](const auto& a, const auto& b) { return a.size() < b.size(); });
        g.push_back(donor->back());
        donor->pop_back();
    }

    Partition out;
    out.rows = coll.rows();
    for (auto& g : groups) {
        std::sort(g.begin(), g.end());
        out.clusters.push_back(make_cluster(out.clusters.size(), coll, g, BoundValue{}, target_rank));
    }
    out = assign_rank(std::move(out), target_rank);
    const std::vector<BoundValue> exact = exact_cluster_errors(out, coll);
    for (std::size_t c = 0; c < out.clusters.size(); ++c) {
        out.clusters[c].predicted = exact[c];
    }
    return out;
}

Partition assign_rank(Partition partition, std::size_t r) {
    const auto m = static_cast<std::size_t>(partition.rows);
    for (Cluster& c : partition.clusters) {
        c.rank = std::min({r, m, c.cols});
    }
    return partition;
}

void validate_cover(const Partition& partition, const Collection& coll) {
    if (partition.rows != coll.rows()) {
        throw InvalidArgument("plan row count " + std::to_string(partition.rows) +
                              " does not match collection row count " + std::to_string(coll.rows()));
    }
    std::set<std::string> seen;
    for (const Cluster& c : partition.clusters) {
        if (c.members.empty()) {
            throw InvalidArgument("cluster '" + c.id + "' is empty");
        }
        std::size_t cols = 0;
        for (const std::string& id : c.members) {
            if (!coll.contains(id)) {
                throw InvalidArgument("plan references unknown block '" + id + "'");
            }
            if (!seen.insert(id).second) {
                throw InvalidArgument("block '" + id + "' appears in more than one cluster");
            }
            cols += static_cast<std::size_t>(coll.at(id).cols());
        }
        if (cols != c.cols) {
            throw InvalidArgument("cluster '" + c.id + "' column count does not match the collection");
        }
        if (c.rank < 1 || c.rank > std::min(cols, static_cast<std::size_t>(coll.rows()))) {
            throw InvalidArgument("cluster '" + c.id + "' rank out of range");
        }
    }
    if (seen.size() != coll.size()) {
        throw InvalidArgument("plan covers " + std::to_string(seen.size()) + " of " +
                              std::to_string(coll.size()) + " blocks");
    }
}

std::vector<BoundValue> exact_cluster_errors(const Partition& partition, const Collection& coll) {
    std::vector<BoundValue> out;
    out.reserve(partition.clusters.size());
    for (const Cluster& c : partition.clusters) {
        out.push_back(exact_bound(coll.concat(c.members), c.rank));
    }
    return out;
}

}  // namespace lrc
