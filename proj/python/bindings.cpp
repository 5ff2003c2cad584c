#include <sstream>

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kgcsg/correlation.hpp"
#include "kgcsg/error.hpp"
#include "kgcsg/knn.hpp"
#include "kgcsg/pipeline.hpp"
#include "kgcsg/report.hpp"
#include "kgcsg/sampling.hpp"
#include "kgcsg/similarity.hpp"
#include "kgcsg/spectral.hpp"
#include "kgcsg/triples.hpp"

namespace py = pybind11;
using namespace kgcsg;

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

SimilarityMatrix as_similarity(const Eigen::MatrixXd& m, bool symmetrized) {
    SimilarityMatrix s;
    s.entries = m;
    s.symmetrized = symmetrized;
    return s;
}

py::dict stats_dict(const DatasetStats& s) {
    py::dict d;
    d["entities"] = s.entity_count;
    d["relations"] = s.relation_count;
    d["triples"] = s.triple_count;
    d["classes"] = s.class_count;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Cumulative Spectral Gradient for knowledge-graph tail prediction";

    auto base = py::register_exception<Error>(m, "KgcsgError", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<DataError>(m, "DataError", base.ptr());
    py::register_exception<NumericError>(m, "NumericError", base.ptr());

    py::class_<TripleSet>(m, "TripleSet")
        .def("__len__", &TripleSet::size)
        .def_property_readonly("triples",
                               [](const TripleSet& ts) {
                                   py::list out;
                                   for (const auto& t : ts.triples()) out.append(py::make_tuple(t.head, t.relation, t.tail));
                                   return out;
                               })
        .def_property_readonly("entities", &TripleSet::entities)
        .def_property_readonly("relations", &TripleSet::relations);

    m.def(
        "parse_triples",
        [](const std::string& text) {
            std::istringstream in(text);
            return parse_triples(in);
        },
        py::arg("text"), "Parse tab-separated triples from a string.");
    m.def("read_triple_files", &read_triple_files, py::arg("paths"));
    m.def("dataset_stats", [](const TripleSet& ts) { return stats_dict(dataset_stats(ts)); });

    py::class_<ClassIndex>(m, "ClassIndex")
        .def("__len__", &ClassIndex::size)
        .def_property_readonly("tails",
                               [](const ClassIndex& ci) {
                                   std::vector<std::string> out;
                                   for (const auto& c : ci.classes) out.push_back(c.tail);
                                   return out;
                               })
        .def_property_readonly("sizes",
                               [](const ClassIndex& ci) {
                                   std::vector<std::size_t> out;
                                   for (const auto& c : ci.classes) out.push_back(c.pairs.size());
                                   return out;
                               })
        .def("pairs", [](const ClassIndex& ci, std::size_t i) {
            py::list out;
            for (const auto& p : ci.classes.at(i).pairs) out.append(py::make_tuple(p.head, p.relation));
            return out;
        });
    m.def("group_by_tail", &group_by_tail, py::arg("triples"));
    m.def("filter_classes", &filter_classes, py::arg("classes"), py::arg("min_pairs") = 1,
          py::arg("max_classes") = py::none());

    py::class_<EmbeddingStore>(m, "EmbeddingStore")
        .def_property_readonly("dim", &EmbeddingStore::dim)
        .def("__len__", &EmbeddingStore::size)
        .def("__contains__", &EmbeddingStore::contains)
        .def_property_readonly("tokens", &EmbeddingStore::tokens)
        .def("vector",
             [](const EmbeddingStore& s, const std::string& token) {
                 const auto v = s.find(token);
                 if (v.empty()) throw py::key_error(token);
                 return std::vector<double>(v.begin(), v.end());
             })
        .def("normalized", &EmbeddingStore::normalized)
        .def("to_text",
             [](const EmbeddingStore& s) {
                 std::ostringstream out;
                 write_embeddings(out, s);
                 return out.str();
             })
        .def("__eq__", [](const EmbeddingStore& a, const EmbeddingStore& b) { return a == b; });

    m.def(
        "load_embeddings",
        [](const std::string& text) {
            std::istringstream in(text);
            return load_embeddings(in);
        },
        py::arg("text"));
    m.def("load_embeddings_file", &load_embeddings_file, py::arg("path"));
    m.def("hash_embed", &hash_embed, py::arg("tokens"), py::arg("dim"), py::arg("seed"));
    m.def("vocabulary", &vocabulary);
    m.def(
        "compose",
        [](const EmbeddingStore& s, const std::string& h, const std::string& r) { return compose(s, h, r).components; },
        py::arg("store"), py::arg("head"), py::arg("relation"));
    m.def(
        "l2_distance_sq",
        [](const std::vector<double>& a, const std::vector<double>& b) {
            return l2_distance_sq(std::span<const double>(a), std::span<const double>(b));
        },
        py::arg("a"), py::arg("b"));

    py::class_<SampledPool>(m, "SampledPool")
        .def("__len__", &SampledPool::size)
        .def_property_readonly("vectors",
                               [](const SampledPool& p) {
                                   return RowMatrix(Eigen::Map<const RowMatrix>(
                                       p.data.data(), static_cast<Eigen::Index>(p.size()),
                                       static_cast<Eigen::Index>(p.width)));
                               })
        .def_readonly("class_of", &SampledPool::class_of)
        .def_readonly("per_class_counts", &SampledPool::per_class_counts)
        .def_readonly("rng_seed", &SampledPool::rng_seed);
    m.def(
        "sample_pool",
        [](const EmbeddingStore& s, const ClassIndex& ci, std::size_t m, std::uint64_t seed) {
            return sample_pool(s, ci, m, seed);
        },
        py::arg("store"), py::arg("classes"), py::arg("m"), py::arg("seed"));

    m.def(
        "knn_exact",
        [](const Eigen::Ref<const RowMatrix>& rows, std::size_t k, bool include_self) {
            const RowMatrix copy = rows;
            const auto lists = knn_exact({copy.data(), static_cast<std::size_t>(copy.size())},
                                         static_cast<std::size_t>(copy.rows()), static_cast<std::size_t>(copy.cols()),
                                         k, KnnOptions{include_self, 0});
            std::vector<std::vector<std::size_t>> out;
            out.reserve(lists.size());
            for (const auto& nl : lists) out.push_back(nl.neighbors);
            return out;
        },
        py::arg("vectors"), py::arg("k"), py::arg("include_self") = false);
    m.def(
        "build_similarity",
        [](const SampledPool& pool, std::size_t k, bool include_self) {
            return build_similarity(pool, knn_exact(pool, k, KnnOptions{include_self, 0}), k).entries;
        },
        py::arg("pool"), py::arg("k"), py::arg("include_self") = false,
        "k-NN search over the pool followed by the class overlap count.");

    m.def("symmetrize", [](const Eigen::MatrixXd& s) { return symmetrize(as_similarity(s, false)).entries; });
    m.def("degree_matrix", [](const Eigen::MatrixXd& w) { return degree_matrix(as_similarity(w, true)); });
    m.def("normalized_laplacian",
          [](const Eigen::MatrixXd& w) { return normalized_laplacian(as_similarity(w, true)).entries; });
    m.def("eigenvalues_symmetric", [](const Eigen::MatrixXd& l) {
        return eigenvalues_symmetric(Laplacian{l, true}).eigenvalues;
    });
    m.def(
        "csg",
        [](const std::vector<double>& eigenvalues, std::optional<std::size_t> k_c) {
            const Spectrum spec{eigenvalues, 0.0};
            return k_c ? csg_at(spec, *k_c) : csg(spec).csg_full;
        },
        py::arg("eigenvalues"), py::arg("k_c") = py::none());

    m.def("pearson", [](const std::vector<std::pair<double, double>>& pts) { return pearson(pts); },
          py::arg("points"));

    py::class_<HashEmbedding>(m, "HashEmbedding")
        .def(py::init([](std::size_t dim, std::uint64_t seed) { return HashEmbedding{dim, seed}; }),
             py::arg("dim") = 64, py::arg("seed") = 0)
        .def_readwrite("dim", &HashEmbedding::dim)
        .def_readwrite("seed", &HashEmbedding::seed);

    py::class_<RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def_readwrite("triple_paths", &RunConfig::triple_paths)
        .def_readwrite("dataset_name", &RunConfig::dataset_name)
        .def_readwrite("embeddings", &RunConfig::embeddings)
        .def_readwrite("m", &RunConfig::m)
        .def_readwrite("k", &RunConfig::k)
        .def_readwrite("kc", &RunConfig::kc)
        .def_readwrite("seed", &RunConfig::seed)
        .def_readwrite("normalize_embeddings", &RunConfig::normalize_embeddings)
        .def_readwrite("include_self", &RunConfig::include_self)
        .def_readwrite("symmetrize", &RunConfig::symmetrize)
        .def_readwrite("min_pairs", &RunConfig::min_pairs)
        .def_readwrite("max_classes", &RunConfig::max_classes)
        .def_readwrite("threads", &RunConfig::threads);

    py::class_<CsgReport>(m, "CsgReport")
        .def_readonly("dataset", &CsgReport::dataset)
        .def_readonly("csg_full", &CsgReport::csg_full)
        .def_readonly("csg_at", &CsgReport::csg_at)
        .def_readonly("pool_size", &CsgReport::pool_size)
        .def_readonly("classes_used", &CsgReport::classes_used)
        .def_readonly("lambda_min", &CsgReport::lambda_min)
        .def_readonly("lambda_max", &CsgReport::lambda_max)
        .def_property_readonly("stats", [](const CsgReport& r) { return stats_dict(r.stats); })
        .def(
            "to_json",
            [](const CsgReport& r, bool include_timing) { return to_json(r, EmitOptions{include_timing}).dump(2); },
            py::arg("include_timing") = true);

    py::class_<SweepCell>(m, "SweepCell")
        .def_readonly("m", &SweepCell::m)
        .def_readonly("k", &SweepCell::k)
        .def_readonly("csg", &SweepCell::csg)
        .def_readonly("pool_size", &SweepCell::pool_size)
        .def_readonly("wall_ms", &SweepCell::wall_ms)
        .def_readonly("status", &SweepCell::status);

    py::class_<SweepGrid>(m, "SweepGrid")
        .def_readonly("m_values", &SweepGrid::m_values)
        .def_readonly("k_values", &SweepGrid::k_values)
        .def_readonly("cells", &SweepGrid::cells)
        .def(
            "to_csv",
            [](const SweepGrid& g, bool include_timing) {
                std::ostringstream out;
                emit_report(g, ReportFormat::csv, out, EmitOptions{include_timing});
                return out.str();
            },
            py::arg("include_timing") = true);

    m.def("run_csg", py::overload_cast<const RunConfig&>(&run_csg), py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def("run_sweep",
          py::overload_cast<const RunConfig&, std::vector<std::size_t>, std::vector<std::size_t>>(&run_sweep),
          py::arg("config"), py::arg("m_values"), py::arg("k_values"), py::call_guard<py::gil_scoped_release>());
}
