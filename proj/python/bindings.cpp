#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "lrcluster/bounds.hpp"
#include "lrcluster/clustering.hpp"
#include "lrcluster/codec.hpp"
#include "lrcluster/error.hpp"
#include "lrcluster/harness.hpp"
#include "lrcluster/linalg.hpp"
#include "lrcluster/plan.hpp"
#include "lrcluster/store.hpp"
#include "lrcluster/synth.hpp"
#include "lrcluster/tracker.hpp"

namespace py = pybind11;
using namespace lrc;

namespace {

Collection collection_from_pairs(const std::vector<std::pair<std::string, Matrix>>& pairs) {
    std::vector<Block> blocks;
    blocks.reserve(pairs.size());
    for (const auto& [id, data] : pairs) {
        blocks.emplace_back(id, data);
    }
    return Collection(std::move(blocks));
}

Partition run(const Collection& coll, const std::string& algorithm, double epsilon, std::size_t rank,
              const std::optional<std::string>& sort, std::size_t k, std::uint64_t seed) {
    ClusteringRequest req;
    req.algorithm = algorithm_from_string(algorithm);
    req.budget = {epsilon, rank};
    if (sort) req.sort = sort_mode_from_string(*sort);
    req.k = k;
    req.seed = seed;
    return run_clustering(coll, req);
}

}  // namespace

PYBIND11_MODULE(_lrcluster, m) {
    m.doc() = "Error-budgeted clustering and shared-basis SVD compression of matrix collections";

    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
    py::register_exception<NotFound>(m, "NotFound", PyExc_KeyError);

    // linalg
    m.def("thin_svd", [](const Matrix& M) {
        ThinSvd s = thin_svd(M);
        return py::make_tuple(s.U, s.S.values(), s.V);
    }, py::arg("M"));
    m.def("singular_values", [](const Matrix& M) { return singular_values(M).values(); });
    m.def("exact_trunc_error", &exact_trunc_error, py::arg("M"), py::arg("r"));
    m.def("orthonormal_basis", [](const Matrix& M) { return orthonormal_basis(M); });
    m.def("project_residual", &project_residual, py::arg("Q"), py::arg("A"));

    // bounds
    py::class_<BoundValue>(m, "BoundValue")
        .def_property_readonly("kind", [](const BoundValue& b) { return std::string(to_string(b.kind)); })
        .def_readonly("error", &BoundValue::error)
        .def_readonly("error_sq", &BoundValue::error_sq)
        .def_readonly("relative", &BoundValue::relative)
        .def("__repr__", [](const BoundValue& b) {
            return "BoundValue(" + std::string(to_string(b.kind)) + ", error=" + format_real(b.error) + ")";
        });
    m.def("weyl_bound", [](const std::vector<Matrix>& blocks, std::size_t r) {
        std::vector<BlockSummary> summaries;
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            summaries.push_back(summarize(Block(std::to_string(i), blocks[i]), r));
        }
        return weyl_bound(summaries, r);
    }, py::arg("blocks"), py::arg("r"));
    m.def("residual_bound", [](double total, const std::vector<double>& mu, std::size_t r) {
        return residual_bound(total, Spectrum(mu), r);
    }, py::arg("total_energy_sq"), py::arg("mu"), py::arg("r"));
    m.def("plugin_estimate", [](double total, const std::vector<double>& s, std::size_t r) {
        return plugin_estimate(total, Spectrum(s), r);
    }, py::arg("total_energy_sq"), py::arg("sigma_tilde"), py::arg("r"));

    // trackers
    py::class_<ResidualTracker>(m, "ResidualTracker")
        .def(py::init<Eigen::Index>(), py::arg("rows"))
        .def("append", [](ResidualTracker& t, const std::string& id, const Matrix& A) { t.append(Block(id, A)); })
        .def("top_mu", [](const ResidualTracker& t, std::size_t r) { return t.top_mu(r).values(); })
        .def("residual_norm_of", &ResidualTracker::residual_norm_of)
        .def("bound", [](const ResidualTracker& t, std::size_t r) { return residual_bound(t, r); }, py::arg("r"))
        .def_property_readonly("basis", &ResidualTracker::basis)
        .def_property_readonly("total_energy_sq", &ResidualTracker::total_energy_sq)
        .def_property_readonly("member_ids", &ResidualTracker::member_ids);
    py::class_<GramTracker>(m, "GramTracker")
        .def(py::init<Eigen::Index, std::size_t>(), py::arg("rows"), py::arg("target_rank"))
        .def("append", [](GramTracker& t, const std::string& id, const Matrix& A) { t.append(Block(id, A)); })
        .def("truncate", &GramTracker::truncate)
        .def("sigma_tilde", [](const GramTracker& t) { return t.sigma_tilde().values(); })
        .def("gram", &GramTracker::gram)
        .def("estimate", [](const GramTracker& t, std::size_t r) { return plugin_estimate(t, r); }, py::arg("r"))
        .def_property_readonly("total_energy_sq", &GramTracker::total_energy_sq)
        .def_property_readonly("discarded_energy", &GramTracker::discarded_energy);

    // collections
    py::class_<Collection>(m, "Collection")
        .def(py::init(&collection_from_pairs), py::arg("blocks"))
        .def("__len__", &Collection::size)
        .def_property_readonly("rows", &Collection::rows)
        .def_property_readonly("ids", &Collection::ids)
        .def("block", [](const Collection& c, const std::string& id) { return c.at(id).data(); })
        .def("concat", [](const Collection& c, const std::vector<std::string>& ids) { return c.concat(ids); });
    m.def("generate", [](const std::string& profile, std::size_t count, std::size_t rows, std::size_t cols,
                         std::uint64_t seed, std::size_t true_rank, double alpha) {
        return generate({profile_from_string(profile), count, rows, cols, seed, true_rank, alpha});
    }, py::arg("profile"), py::arg("count"), py::arg("rows"), py::arg("cols"), py::arg("seed") = 0,
       py::arg("true_rank") = 4, py::arg("alpha") = 1.0);
    m.def("read_collection", &read_collection);
    m.def("write_collection", &write_collection);

    // clustering
    py::class_<Cluster>(m, "Cluster")
        .def_readonly("id", &Cluster::id)
        .def_readonly("members", &Cluster::members)
        .def_readonly("cols", &Cluster::cols)
        .def_readonly("rank", &Cluster::rank)
        .def_readonly("predicted", &Cluster::predicted);
    py::class_<Partition>(m, "Partition")
        .def_readonly("rows", &Partition::rows)
        .def_readonly("clusters", &Partition::clusters)
        .def("exact_errors", [](const Partition& p, const Collection& c) { return exact_cluster_errors(p, c); });
    m.def("cluster", &run, py::arg("collection"), py::arg("algorithm"), py::arg("epsilon"),
          py::arg("rank"), py::arg("sort") = std::nullopt, py::arg("k") = 0, py::arg("seed") = 0);

    // store
    py::class_<CompressedStore>(m, "CompressedStore")
        .def_readonly("rows", &CompressedStore::rows)
        .def("reconstruct", &reconstruct_block)
        .def("memory_footprint", &memory_footprint)
        .def("cluster_ids", [](const CompressedStore& s) {
            std::vector<std::string> ids;
            for (const CompressedCluster& c : s.clusters) ids.push_back(c.id);
            return ids;
        });
    m.def("compress", &compress, py::arg("collection"), py::arg("partition"));
    m.def("compression_ratio", &compression_ratio);
    m.def("read_store", &read_store);
    m.def("write_store", &write_store);
    m.def("verify_csv", [](const Collection& c, const CompressedStore& s, const Partition* p) {
        return to_csv(verify(c, s, p));
    }, py::arg("collection"), py::arg("store"), py::arg("partition") = nullptr);
    m.def("bench_slack_csv", [](const Collection& c, std::size_t rank, std::vector<std::size_t> sizes,
                                std::size_t trials, std::uint64_t seed) {
        return to_csv(bench_slack(c, {rank, std::move(sizes), trials, seed}));
    }, py::arg("collection"), py::arg("rank"), py::arg("sizes"), py::arg("trials") = 10, py::arg("seed") = 0);
}
