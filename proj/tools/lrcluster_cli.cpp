// lrcluster command-line interface.
//
//   gen          synthetic .mcol collection
//   cluster      plan (JSON) from a collection
//   compress     .msvd store from a collection and a plan
//   reconstruct  raw matrix files from a store
//   verify       per-cluster error report of a store
//   bench-slack  predicted vs exact truncation error on random subsets
//   sweep        (epsilon, rank) grid of cluster -> compress -> verify

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lrcluster/codec.hpp"
#include "lrcluster/error.hpp"
#include "lrcluster/harness.hpp"
#include "lrcluster/plan.hpp"
#include "lrcluster/store.hpp"
#include "lrcluster/synth.hpp"

namespace {

using namespace lrc;

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
    } else {
        write_file(path, text);
    }
}

std::optional<SortMode> parse_sort(const std::string& s) {
    if (s.empty()) {
        return std::nullopt;
    }
    return sort_mode_from_string(s);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Error-budgeted clustering and shared-basis SVD compression of matrix collections"};
    app.require_subcommand(1);

    // gen
    GenConfig gen;
    std::string gen_profile = "gaussian";
    std::string gen_out;
    auto* cmd_gen = app.add_subcommand("gen", "Write a synthetic .mcol collection");
    cmd_gen->add_option("--profile", gen_profile,
                        "gaussian|shared-subspace|decaying-spectrum|nested|orthogonal-families");
    cmd_gen->add_option("--count", gen.count, "Number of blocks")->required();
    cmd_gen->add_option("--rows", gen.rows, "Row dimension m")->required();
    cmd_gen->add_option("--cols", gen.cols, "Columns per block")->required();
    cmd_gen->add_option("--seed", gen.seed);
    cmd_gen->add_option("--true-rank", gen.true_rank, "Subspace rank (shared-subspace)");
    cmd_gen->add_option("--alpha", gen.alpha, "Spectral decay exponent (decaying-spectrum)");
    cmd_gen->add_option("--output", gen_out)->required();

    // cluster
    std::string cl_input, cl_output, cl_algorithm = "max-norm", cl_sort;
    ClusteringRequest req;
    auto* cmd_cluster = app.add_subcommand("cluster", "Cluster a collection under an error budget");
    cmd_cluster->add_option("--input", cl_input)->required();
    cmd_cluster->add_option("--algorithm", cl_algorithm, "max-norm|residual|approx|random");
    cmd_cluster->add_option("--epsilon", req.budget.epsilon, "Relative Frobenius tolerance");
    cmd_cluster->add_option("--rank", req.budget.target_rank, "Target rank r")->required();
    cmd_cluster->add_option("--sort", cl_sort, "frobenius|residual (residual, approx)");
    cmd_cluster->add_option("--k", req.k, "Cluster count (random)");
    cmd_cluster->add_option("--seed", req.seed);
    cmd_cluster->add_flag("--skip-rejected", req.skip_rejected,
                          "Continue scanning after a rejected candidate");
    cmd_cluster->add_option("--output", cl_output, "Plan file (stdout if omitted)");

    // compress
    std::string cp_input, cp_plan, cp_output;
    auto* cmd_compress = app.add_subcommand("compress", "Compress a collection by a plan");
    cmd_compress->add_option("--input", cp_input)->required();
    cmd_compress->add_option("--plan", cp_plan)->required();
    cmd_compress->add_option("--output", cp_output)->required();

    // reconstruct
    std::string rc_input, rc_block, rc_output;
    bool rc_all = false;
    auto* cmd_reconstruct = app.add_subcommand("reconstruct", "Reconstruct blocks from a store");
    cmd_reconstruct->add_option("--input", rc_input, "Store (.msvd)")->required();
    auto* rc_block_opt = cmd_reconstruct->add_option("--block", rc_block, "Block id");
    auto* rc_all_opt = cmd_reconstruct->add_flag("--all", rc_all, "Every block, one file each");
    rc_block_opt->excludes(rc_all_opt);
    cmd_reconstruct->add_option("--output", rc_output, "File (--block) or directory (--all)")->required();

    // verify
    std::string vf_input, vf_store, vf_plan, vf_report;
    auto* cmd_verify = app.add_subcommand("verify", "Measure a store against its collection");
    cmd_verify->add_option("--input", vf_input)->required();
    cmd_verify->add_option("--store", vf_store)->required();
    cmd_verify->add_option("--plan", vf_plan, "Plan supplying predicted errors");
    cmd_verify->add_option("--report", vf_report, "Report file (stdout if omitted)");

    // bench-slack
    std::string bs_input, bs_report;
    SlackConfig slack_cfg;
    auto* cmd_slack = app.add_subcommand("bench-slack", "Slack of the error estimators on random subsets");
    cmd_slack->add_option("--input", bs_input)->required();
    cmd_slack->add_option("--rank", slack_cfg.rank)->required();
    cmd_slack->add_option("--sizes", slack_cfg.sizes, "Comma-separated cluster sizes")
        ->delimiter(',')
        ->required();
    cmd_slack->add_option("--trials", slack_cfg.trials);
    cmd_slack->add_option("--seed", slack_cfg.seed);
    cmd_slack->add_option("--report", bs_report, "Report file (stdout if omitted)");

    // sweep
    std::string sw_input, sw_report, sw_algorithm = "max-norm", sw_sort;
    SweepConfig sweep_cfg;
    bool sw_no_timing = false;
    auto* cmd_sweep = app.add_subcommand("sweep", "Compression over an (epsilon, rank) grid");
    cmd_sweep->add_option("--input", sw_input)->required();
    cmd_sweep->add_option("--algorithm", sw_algorithm, "max-norm|residual|approx|random");
    cmd_sweep->add_option("--sort", sw_sort, "frobenius|residual");
    cmd_sweep->add_option("--epsilons", sweep_cfg.epsilons)->delimiter(',')->required();
    cmd_sweep->add_option("--ranks", sweep_cfg.ranks)->delimiter(',')->required();
    cmd_sweep->add_option("--k", sweep_cfg.k, "Cluster count (random)");
    cmd_sweep->add_option("--seed", sweep_cfg.seed);
    cmd_sweep->add_flag("--no-timing", sw_no_timing, "Write 0 into wall_time_ms");
    cmd_sweep->add_option("--report", sw_report, "Report file (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*cmd_gen) {
            gen.profile = profile_from_string(gen_profile);
            write_collection(generate(gen), gen_out);
        } else if (*cmd_cluster) {
            req.algorithm = algorithm_from_string(cl_algorithm);
            req.sort = parse_sort(cl_sort);
            const Collection coll = read_collection(cl_input);
            Plan plan{req, run_clustering(coll, req)};
            emit(plan_to_json(plan), cl_output);
        } else if (*cmd_compress) {
            const Collection coll = read_collection(cp_input);
            const Plan plan = read_plan(cp_plan);
            write_store(compress(coll, plan.partition), cp_output);
        } else if (*cmd_reconstruct) {
            const CompressedStore store = read_store(rc_input);
            if (rc_all) {
                std::filesystem::create_directories(rc_output);
                for (const CompressedCluster& c : store.clusters) {
                    for (const StoreMember& mem : c.members) {
                        write_raw_matrix(reconstruct_block(store, mem.block_id),
                                         std::filesystem::path(rc_output) / (mem.block_id + ".mat"));
                    }
                }
            } else {
                if (rc_block.empty()) {
                    throw InvalidArgument("reconstruct needs --block or --all");
                }
                write_raw_matrix(reconstruct_block(store, rc_block), rc_output);
            }
        } else if (*cmd_verify) {
            const Collection coll = read_collection(vf_input);
            const CompressedStore store = read_store(vf_store);
            std::optional<Plan> plan;
            if (!vf_plan.empty()) {
                plan = read_plan(vf_plan);
            }
            emit(to_csv(verify(coll, store, plan ? &plan->partition : nullptr)), vf_report);
        } else if (*cmd_slack) {
            const Collection coll = read_collection(bs_input);
            emit(to_csv(bench_slack(coll, slack_cfg)), bs_report);
        } else if (*cmd_sweep) {
            sweep_cfg.algorithm = algorithm_from_string(sw_algorithm);
            sweep_cfg.sort = parse_sort(sw_sort);
            sweep_cfg.timing = !sw_no_timing;
            const Collection coll = read_collection(sw_input);
            const bool certified = sweep_cfg.algorithm == Algorithm::max_norm ||
                                   sweep_cfg.algorithm == Algorithm::residual;
            emit(to_csv(sweep(coll, sweep_cfg), certified), sw_report);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
