#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "lrcluster/clustering.hpp"
#include "lrcluster/error.hpp"
#include "lrcluster/synth.hpp"
#include "oracle.hpp"

using namespace lrc;

namespace {

// Oracle relative error of every cluster, at its assigned rank.
std::vector<double> oracle_relative(const Partition& p, const Collection& coll) {
    std::vector<double> out;
    for (const Cluster& c : p.clusters) {
        const Matrix M = coll.concat(c.members);
        const double fro = M.norm();
        out.push_back(fro > 0.0 ? oracle::jacobi_trunc_error(M, c.rank) / fro : 0.0);
    }
    return out;
}

void check_certified(const Partition& p, const Collection& coll, double eps) {
    validate_cover(p, coll);
    const std::vector<double> rel = oracle_relative(p, coll);
    for (std::size_t c = 0; c < rel.size(); ++c) {
        const Cluster& cl = p.clusters[c];
        CHECK(cl.predicted.relative >= rel[c] - 1e-9);
        const auto nonzero = std::count_if(cl.members.begin(), cl.members.end(),
                                           [&](const std::string& id) { return coll.at(id).energy_sq() > 0.0; });
        if (nonzero == 1 && rel[c] > eps) {
            // A block that misses the budget on its own can only stand alone
            // (zero blocks aside).
            continue;
        }
        CHECK(rel[c] <= eps + 1e-9);
        CHECK(cl.predicted.relative <= eps);
    }
}

Matrix scaled_energy(Rng& rng, Eigen::Index m, Eigen::Index n, double energy) {
    Matrix A = rng.gaussian(m, n);
    return A * std::sqrt(energy / A.squaredNorm());
}

// Greedy reference with the exact certificate computed from the explicit
// concatenation: anchors by decreasing norm, candidates by increasing norm,
// stop on the first rejection.
std::vector<std::vector<std::string>> exact_greedy(const Collection& coll, double eps, std::size_t r) {
    std::vector<std::size_t> order(coll.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (coll[a].energy_sq() != coll[b].energy_sq()) return coll[a].energy_sq() > coll[b].energy_sq();
        return coll[a].id() < coll[b].id();
    });
    std::vector<std::vector<std::string>> out;
    while (!order.empty()) {
        std::vector<std::string> members{coll[order.front()].id()};
        order.erase(order.begin());
        while (!order.empty()) {
            const std::string cand = coll[order.back()].id();
            std::vector<std::string> trial = members;
            trial.push_back(cand);
            const Matrix M = coll.concat(trial);
            if (oracle::jacobi_trunc_error(M, r) / M.norm() > eps) break;
            members = trial;
            order.pop_back();
        }
        out.push_back(members);
    }
    return out;
}

std::vector<std::vector<std::string>> members_of(const Partition& p) {
    std::vector<std::vector<std::string>> out;
    for (const Cluster& c : p.clusters) out.push_back(c.members);
    return out;
}

}  // namespace

TEST_CASE("budget and names") {
    CHECK_THROWS_AS(ErrorBudget({0.0, 2}).validate(), InvalidArgument);
    CHECK_THROWS_AS(ErrorBudget({1.0, 2}).validate(), InvalidArgument);
    CHECK_THROWS_AS(ErrorBudget({0.1, 0}).validate(), InvalidArgument);
    CHECK(algorithm_from_string("max-norm") == Algorithm::max_norm);
    CHECK(to_string(Algorithm::approx) == "approx");
    CHECK(sort_mode_from_string("residual") == SortMode::residual);
    CHECK_THROWS_AS(algorithm_from_string("kmeans"), InvalidArgument);
    CHECK_THROWS_AS(sort_mode_from_string(""), InvalidArgument);
}

TEST_CASE("cluster_max_norm") {
    Rng rng(41);
    SUBCASE("one block") {
        const Matrix A = rng.gaussian(6, 5);
        const Collection coll({Block("a", A)});
        const Partition p = cluster_max_norm(coll, {0.1, 2});
        REQUIRE(p.clusters.size() == 1);
        CHECK(p.clusters[0].id == "c0");
        CHECK(p.clusters[0].members == std::vector<std::string>{"a"});
        CHECK(p.clusters[0].rank == 2);
        CHECK(p.clusters[0].predicted.kind == BoundKind::weyl);
        CHECK(p.clusters[0].predicted.error ==
              doctest::Approx(oracle::jacobi_trunc_error(A, 2)).epsilon(1e-10));
    }
    SUBCASE("anchor energy 100, two tail blocks of energy 0.1") {
        const Collection coll({Block("anchor", scaled_energy(rng, 8, 4, 100.0)),
                               Block("t1", scaled_energy(rng, 8, 2, 0.1)),
                               Block("t2", scaled_energy(rng, 8, 2, 0.1))});
        const Partition p = cluster_max_norm(coll, {0.05, 4});
        REQUIRE(p.clusters.size() == 1);
        CHECK(p.clusters[0].members.size() == 3);
        CHECK(p.clusters[0].predicted.relative == doctest::Approx(std::sqrt(0.2 / 100.2)).epsilon(1e-9));
        CHECK(p.clusters[0].predicted.relative == doctest::Approx(0.0447).epsilon(1e-3));
    }
    SUBCASE("tail closes when the next block breaks the budget") {
        const Collection coll({Block("anchor", scaled_energy(rng, 8, 4, 100.0)),
                               Block("t1", scaled_energy(rng, 8, 2, 0.05)),
                               Block("t2", scaled_energy(rng, 8, 2, 0.15)),
                               Block("t3", scaled_energy(rng, 8, 2, 0.3))});
        const Partition p = cluster_max_norm(coll, {0.05, 4});
        // 0.05 + 0.15 fits (sqrt(0.2 / 100.2) < 0.05), adding 0.3 does not.
        REQUIRE(p.clusters.size() == 2);
        CHECK(p.clusters[0].members == std::vector<std::string>{"anchor", "t1", "t2"});
        CHECK(p.clusters[1].members == std::vector<std::string>{"t3"});
    }
    SUBCASE("head absorbs the next-largest blocks up to width r") {
        const Collection coll({Block("a", scaled_energy(rng, 10, 2, 50.0)),
                               Block("b", scaled_energy(rng, 10, 2, 40.0)),
                               Block("c", scaled_energy(rng, 10, 3, 30.0))});
        const Partition p = cluster_max_norm(coll, {0.01, 4});
        REQUIRE(p.clusters.size() == 2);
        CHECK(p.clusters[0].members == std::vector<std::string>{"a", "b"});
        CHECK(p.clusters[0].predicted.error == 0.0);
        check_certified(p, coll, 0.01);
    }
    SUBCASE("zero blocks join unconditionally") {
        const Collection coll({Block("a", rng.gaussian(5, 5)), Block("z", Matrix::Zero(5, 2))});
        const Partition p = cluster_max_norm(coll, {0.01, 1});
        REQUIRE(p.clusters.size() == 1);
        CHECK(p.clusters[0].members == std::vector<std::string>{"a", "z"});
    }
    SUBCASE("fifty random blocks stay within budget") {
        for (double eps : {0.05, 0.2, 0.5}) {
            const Collection coll = oracle::mixed_collection(rng, 16, 50);
            for (std::size_t r : {1, 4, 8}) {
                check_certified(cluster_max_norm(coll, {eps, r}), coll, eps);
            }
        }
    }
    SUBCASE("empty collection") {
        CHECK_THROWS_AS(cluster_max_norm(Collection{}, {0.1, 1}), InvalidArgument);
    }
}

TEST_CASE("cluster_residual") {
    Rng rng(42);
    SUBCASE("orthogonal ranges: the certificate is the exact error") {
        const Collection coll = generate({Profile::orthogonal_families, 6, 48, 4, 7});
        for (SortMode mode : {SortMode::frobenius, SortMode::residual}) {
            const Partition p = cluster_residual(coll, {0.3, 3}, mode);
            validate_cover(p, coll);
            const std::vector<double> rel = oracle_relative(p, coll);
            bool merged = false;
            for (std::size_t c = 0; c < rel.size(); ++c) {
                CHECK(p.clusters[c].predicted.relative == doctest::Approx(rel[c]).epsilon(1e-9).scale(1.0));
                merged = merged || p.clusters[c].members.size() > 1;
            }
            CHECK(merged);
        }
    }
    SUBCASE("nested ranges: singletons although the exact error is zero") {
        const Matrix A = rng.gaussian(12, 3);
        const Collection coll({Block("a", A), Block("ax1", A * (0.6 * rng.orthonormal(3, 3))),
                               Block("ax2", A * (0.5 * rng.orthonormal(3, 3)))});
        const Partition p = cluster_residual(coll, {0.1, 3}, SortMode::frobenius);
        CHECK(p.clusters.size() == 3);
        CHECK(oracle::jacobi_trunc_error(coll.concat(std::vector<std::string>{"a", "ax1", "ax2"}), 3) <= 1e-10 * A.norm());
    }
    SUBCASE("fifty random blocks, both modes") {
        for (double eps : {0.05, 0.2}) {
            const Collection coll = oracle::mixed_collection(rng, 16, 50);
            for (SortMode mode : {SortMode::frobenius, SortMode::residual}) {
                for (std::size_t r : {2, 6}) {
                    check_certified(cluster_residual(coll, {eps, r}, mode), coll, eps);
                    ClusterOptions skip;
                    skip.skip_rejected = true;
                    check_certified(cluster_residual(coll, {eps, r}, mode, skip), coll, eps);
                }
            }
        }
    }
    SUBCASE("deterministic") {
        const Collection coll = oracle::mixed_collection(rng, 12, 20);
        CHECK(cluster_residual(coll, {0.1, 3}, SortMode::residual) ==
              cluster_residual(coll, {0.1, 3}, SortMode::residual));
    }
    SUBCASE("equal norms break by ascending id") {
        Matrix e1 = Matrix::Zero(4, 1);
        e1(0, 0) = 1.0;
        Matrix e2 = Matrix::Zero(4, 1);
        e2(1, 0) = 1.0;
        const Collection coll({Block("y", e2), Block("x", e1)});
        const Partition p = cluster_residual(coll, {0.1, 1}, SortMode::frobenius);
        REQUIRE(p.clusters.size() == 2);
        CHECK(p.clusters[0].members == std::vector<std::string>{"x"});
    }
}

TEST_CASE("cluster_approx") {
    Rng rng(43);
    SUBCASE("untruncated regime matches the exact-certificate greedy") {
        for (int trial = 0; trial < 20; ++trial) {
            // Rank-one and rank-two blocks of comparable size: every accepted
            // cluster has rank <= r, so truncation never discards energy.
            std::vector<Block> blocks;
            const std::size_t count = 3 + rng.below(6);
            for (std::size_t i = 0; i < count; ++i) {
                const auto k = static_cast<Eigen::Index>(1 + rng.below(2));
                Matrix A = oracle::low_rank(rng, 12, 3, k);
                A *= (1.0 + rng.uniform()) / A.norm();
                blocks.emplace_back(block_name(i, count), A);
            }
            const Collection coll(blocks);
            const Partition p = cluster_approx(coll, {0.01, 4}, SortMode::frobenius);
            CHECK(members_of(p) == exact_greedy(coll, 0.01, 4));
            for (const Cluster& c : p.clusters) CHECK(c.predicted.kind == BoundKind::plugin);
        }
    }
    SUBCASE("shared subspace: one cluster, zero error") {
        const Collection coll = generate({Profile::shared_subspace, 20, 40, 6, 9, 8});
        const Partition p = cluster_approx(coll, {0.01, 8}, SortMode::residual);
        REQUIRE(p.clusters.size() == 1);
        CHECK(p.clusters[0].members.size() == 20);
        CHECK(oracle_relative(p, coll)[0] <= 1e-6);
    }
    SUBCASE("fifty random blocks: measured, not asserted") {
        const Collection coll = oracle::mixed_collection(rng, 16, 50);
        const Partition p = cluster_approx(coll, {0.1, 4}, SortMode::frobenius);
        validate_cover(p, coll);
        const std::vector<double> rel = oracle_relative(p, coll);
        const auto violations = std::count_if(rel.begin(), rel.end(), [](double v) { return v > 0.1 + 1e-9; });
        MESSAGE("approx clusters " << p.clusters.size() << ", budget violations " << violations);
    }
}

TEST_CASE("cluster_random") {
    Rng rng(44);
    const Collection coll = oracle::mixed_collection(rng, 8, 12);
    SUBCASE("k = block count gives singletons") {
        const Partition p = cluster_random(coll, 12, 5, 3);
        validate_cover(p, coll);
        CHECK(p.clusters.size() == 12);
        for (const Cluster& c : p.clusters) CHECK(c.members.size() == 1);
    }
    SUBCASE("k = 1 gives one cluster") {
        const Partition p = cluster_random(coll, 1, 5, 3);
        REQUIRE(p.clusters.size() == 1);
        CHECK(p.clusters[0].members.size() == 12);
        CHECK(p.clusters[0].predicted.kind == BoundKind::exact);
        CHECK(p.clusters[0].predicted.error ==
              doctest::Approx(oracle::jacobi_trunc_error(coll.concat(p.clusters[0].members), 3)).epsilon(1e-9));
    }
    SUBCASE("same seed, same partition; different seeds differ somewhere") {
        CHECK(cluster_random(coll, 4, 99, 2) == cluster_random(coll, 4, 99, 2));
        bool differs = false;
        for (std::uint64_t s = 0; s < 5; ++s) {
            differs = differs || !(members_of(cluster_random(coll, 4, s, 2)) ==
                                   members_of(cluster_random(coll, 4, 99, 2)));
        }
        CHECK(differs);
    }
    SUBCASE("every cluster non-empty") {
        for (std::uint64_t s = 0; s < 50; ++s) {
            const Partition p = cluster_random(coll, 9, s, 2);
            validate_cover(p, coll);
            CHECK(p.clusters.size() == 9);
        }
    }
    SUBCASE("k out of range") {
        CHECK_THROWS_AS(cluster_random(coll, 13, 0, 1), InvalidArgument);
        CHECK_THROWS_AS(cluster_random(coll, 0, 0, 1), InvalidArgument);
    }
}

TEST_CASE("assign_rank") {
    Partition p;
    p.rows = 5;
    p.clusters.push_back({"c0", {"a"}, 3, 0, {}});
    p.clusters.push_back({"c1", {"b", "c"}, 12, 0, {}});
    const Partition q = assign_rank(p, 10);
    CHECK(q.clusters[0].rank == 3);
    CHECK(q.clusters[1].rank == 5);
    const Partition u = assign_rank(p, 2);
    CHECK(u.clusters[0].rank == 2);
    CHECK(u.clusters[1].rank == 2);
    CHECK(assign_rank(u, 2) == u);
}

TEST_CASE("validate_cover rejects broken partitions") {
    Rng rng(45);
    const Collection coll({Block("a", rng.gaussian(4, 2)), Block("b", rng.gaussian(4, 1))});
    Partition p = cluster_max_norm(coll, {0.5, 1});
    validate_cover(p, coll);
    Partition dup = p;
    dup.clusters.push_back(dup.clusters.front());
    dup.clusters.back().id = "extra";
    CHECK_THROWS_AS(validate_cover(dup, coll), InvalidArgument);
    Partition missing;
    missing.rows = 4;
    missing.clusters.push_back({"c0", {"a"}, 2, 1, {}});
    CHECK_THROWS_AS(validate_cover(missing, coll), InvalidArgument);
    Partition unknown = missing;
    unknown.clusters.push_back({"c1", {"zz"}, 1, 1, {}});
    CHECK_THROWS_AS(validate_cover(unknown, coll), InvalidArgument);
}
