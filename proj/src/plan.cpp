#include "lrcluster/plan.hpp"

#include <json.hpp>

#include "lrcluster/codec.hpp"
#include "lrcluster/error.hpp"

namespace lrc {

using ojson = nlohmann::ordered_json;

void ClusteringRequest::validate() const {
    budget.validate();
    const bool sortable = algorithm == Algorithm::residual || algorithm == Algorithm::approx;
    if (sort && !sortable) {
        throw InvalidArgument("--sort is only valid for the residual and approx algorithms");
    }
    if (algorithm == Algorithm::random && k < 1) {
        throw InvalidArgument("random clustering needs --k >= 1");
    }
    if (algorithm != Algorithm::random && k != 0) {
        throw InvalidArgument("--k is only valid for the random algorithm");
    }
}

Partition run_clustering(const Collection& coll, const ClusteringRequest& request) {
    request.validate();
    ClusterOptions options;
    options.skip_rejected = request.skip_rejected;
    switch (request.algorithm) {
        case Algorithm::max_norm:
            return cluster_max_norm(coll, request.budget);
        case Algorithm::residual:
            return cluster_residual(coll, request.budget, request.effective_sort(), options);
        case Algorithm::approx:
            return cluster_approx(coll, request.budget, request.effective_sort(), options);
        case Algorithm::random:
            return cluster_random(coll, request.k, request.seed, request.budget.target_rank);
    }
    throw InvalidArgument("unknown algorithm");
}

std::string plan_to_json(const Plan& plan) {
    const ClusteringRequest& req = plan.request;
    ojson doc;
    doc["format"] = "lrcluster-plan";
    doc["version"] = 1;
    doc["algorithm"] = std::string(to_string(req.algorithm));
    doc["sort"] = req.sort ? ojson(std::string(to_string(*req.sort))) : ojson(nullptr);
    doc["epsilon"] = req.budget.epsilon;
    doc["rank"] = req.budget.target_rank;
    doc["k"] = req.k;
    doc["seed"] = req.seed;
    doc["skip_rejected"] = req.skip_rejected;
    doc["rows"] = plan.partition.rows;
    ojson clusters = ojson::array();
    for (const Cluster& c : plan.partition.clusters) {
        ojson jc;
        jc["id"] = c.id;
        jc["members"] = c.members;
        jc["cols"] = c.cols;
        jc["rank"] = c.rank;
        jc["predicted"] = {{"kind", std::string(to_string(c.predicted.kind))},
                           {"error", c.predicted.error},
                           {"error_sq", c.predicted.error_sq},
                           {"relative", c.predicted.relative}};
        clusters.push_back(std::move(jc));
    }
    doc["clusters"] = std::move(clusters);
    return doc.dump(2) + "\n";
}

Plan plan_from_json(const std::string& text) {
    try {
        const ojson doc = ojson::parse(text);
        if (doc.at("format").get<std::string>() != "lrcluster-plan" || doc.at("version").get<int>() != 1) {
            throw FormatError("plan: unsupported format or version");
        }
        Plan plan;
        ClusteringRequest& req = plan.request;
        req.algorithm = algorithm_from_string(doc.at("algorithm").get<std::string>());
        if (!doc.at("sort").is_null()) {
            req.sort = sort_mode_from_string(doc.at("sort").get<std::string>());
        }
        req.budget.epsilon = doc.at("epsilon").get<double>();
        req.budget.target_rank = doc.at("rank").get<std::size_t>();
        req.k = doc.at("k").get<std::size_t>();
        req.seed = doc.at("seed").get<std::uint64_t>();
        req.skip_rejected = doc.at("skip_rejected").get<bool>();
        plan.partition.rows = doc.at("rows").get<Eigen::Index>();
        for (const ojson& jc : doc.at("clusters")) {
            Cluster c;
            c.id = jc.at("id").get<std::string>();
            c.members = jc.at("members").get<std::vector<std::string>>();
            c.cols = jc.at("cols").get<std::size_t>();
            c.rank = jc.at("rank").get<std::size_t>();
            const ojson& p = jc.at("predicted");
            c.predicted.kind = bound_kind_from_string(p.at("kind").get<std::string>());
            c.predicted.error = p.at("error").get<double>();
            c.predicted.error_sq = p.at("error_sq").get<double>();
            c.predicted.relative = p.at("relative").get<double>();
            plan.partition.clusters.push_back(std::move(c));
        }
        return plan;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("plan: ") + e.what());
    } catch (const InvalidArgument& e) {
        throw FormatError(std::string("plan: ") + e.what());
    }
}

void write_plan(const Plan& plan, const std::filesystem::path& path) {
    write_file(path, plan_to_json(plan));
}

Plan read_plan(const std::filesystem::path& path) {
    return plan_from_json(read_file(path));
}

}  // namespace lrc
