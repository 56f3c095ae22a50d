#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "graspel/cluster.hpp"
#include "graspel/data.hpp"
#include "graspel/graph.hpp"
#include "graspel/io.hpp"
#include "graspel/learn.hpp"
#include "graspel/recover.hpp"
#include "graspel/sparsify.hpp"
#include "graspel/spectral.hpp"

namespace py = pybind11;
using namespace graspel;

namespace {

SparseGraph graph_from_edges(int n, const std::vector<std::tuple<int, int, double>>& edges) {
    SparseGraph g(n);
    for (const auto& [u, v, w] : edges) g.add_edge(u, v, w);
    return g;
}

std::vector<std::tuple<int, int, double>> edges_as_tuples(const SparseGraph& g) {
    std::vector<std::tuple<int, int, double>> out;
    out.reserve(static_cast<std::size_t>(g.num_edges()));
    for (const Edge& e : g.sorted_edges()) out.emplace_back(e.u, e.v, e.w);
    return out;
}

LearnConfig config_from_kwargs(int k_init, double sigma, double tol, double eps, double zeta,
                               int max_iter, int r, std::int64_t sample_budget,
                               std::uint64_t seed, bool track_objective) {
    LearnConfig cfg;
    cfg.k_init = k_init;
    cfg.sigma = sigma;
    cfg.tol = tol;
    cfg.eps = eps;
    cfg.zeta = zeta;
    cfg.max_iter = max_iter;
    cfg.r = r;
    cfg.sample_budget = sample_budget;
    cfg.seed = seed;
    cfg.track_objective = track_objective;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_graspel, m) {
    m.doc() = "Spectral graph learning from data: densification, clustering, "
              "sparsification, recovery.";

    py::class_<SparseGraph>(m, "SparseGraph")
        .def(py::init<int>(), py::arg("n"))
        .def(py::init(&graph_from_edges), py::arg("n"), py::arg("edges"))
        .def_property_readonly("num_nodes", &SparseGraph::num_nodes)
        .def_property_readonly("num_edges", &SparseGraph::num_edges)
        .def_property_readonly("density", &SparseGraph::density)
        .def("add_edge", &SparseGraph::add_edge, py::arg("u"), py::arg("v"), py::arg("w"))
        .def("has_edge", &SparseGraph::has_edge, py::arg("u"), py::arg("v"))
        .def("edges", &edges_as_tuples);

    py::class_<CandidateEdge>(m, "CandidateEdge")
        .def_readonly("p", &CandidateEdge::p)
        .def_readonly("q", &CandidateEdge::q)
        .def_readonly("data_dist", &CandidateEdge::data_dist)
        .def_readonly("embed_dist", &CandidateEdge::embed_dist)
        .def_readonly("distortion", &CandidateEdge::distortion);

    m.def("laplacian_dense",
          [](const SparseGraph& g) { return build_laplacian(g).dense(); },
          py::arg("graph"), "Dense Laplacian matrix of the graph.");

    m.def("connected_components",
          [](const SparseGraph& g) {
              const ComponentInfo info = connected_components(g);
              return py::make_tuple(info.count, info.labels);
          },
          py::arg("graph"));

    m.def("effective_resistance",
          [](const SparseGraph& g, int p, int q) { return effective_resistance_exact(g, p, q); },
          py::arg("graph"), py::arg("p"), py::arg("q"));

    m.def("smallest_eigenpairs",
          [](const SparseGraph& g, int r, std::uint64_t seed) {
              EigsOptions opts;
              opts.seed = seed;
              const SpectralEmbedding emb =
                  smallest_eigenpairs(build_laplacian(g), r, opts);
              return py::make_tuple(emb.eigenvalues, emb.eigenvectors);
          },
          py::arg("graph"), py::arg("r"), py::arg("seed") = 0,
          "Smallest r Laplacian eigenpairs as (values, vectors).");

    m.def("embedding_coordinates",
          [](const SparseGraph& g, int r, double sigma, std::uint64_t seed) {
              EigsOptions opts;
              opts.seed = seed;
              return build_subspace(smallest_eigenpairs(build_laplacian(g), r, opts), sigma)
                  .subspace;
          },
          py::arg("graph"), py::arg("r"), py::arg("sigma") = 1e3, py::arg("seed") = 0,
          "Sigma-weighted spectral embedding, one row per node.");

    m.def("learn",
          [](const Eigen::MatrixXd& data, int k_init, double sigma, double tol, double eps,
             double zeta, int max_iter, int r, std::int64_t sample_budget, std::uint64_t seed,
             bool track_objective) {
              const LearnConfig cfg =
                  config_from_kwargs(k_init, sigma, tol, eps, zeta, max_iter, r, sample_budget,
                                     seed, track_objective);
              const LearnResult result = graspel_learn(DataMatrix(data), cfg);
              py::list trace;
              for (const auto& rec : result.trace.iterations) {
                  py::dict d;
                  d["iter"] = rec.iter;
                  d["eta_max"] = rec.max_distortion;
                  d["edges_added"] = rec.edges_added;
                  d["components"] = rec.components;
                  if (rec.objective) d["objective"] = *rec.objective;
                  trace.append(d);
              }
              return py::make_tuple(result.graph, trace, result.trace.converged);
          },
          py::arg("data"), py::arg("k_init") = 2, py::arg("sigma") = 1e3, py::arg("tol") = 10.0,
          py::arg("eps") = 0.05, py::arg("zeta") = 0.001, py::arg("max_iter") = 50,
          py::arg("r") = 2, py::arg("sample_budget") = 0, py::arg("seed") = 0,
          py::arg("track_objective") = false,
          "Learn a graph from data; returns (graph, trace, converged).");

    m.def("initial_knn_graph",
          [](const Eigen::MatrixXd& data, int k) {
              return initial_knn_graph(DataMatrix(data), k);
          },
          py::arg("data"), py::arg("k"));

    m.def("spectral_clustering",
          [](const SparseGraph& g, int k, std::uint64_t seed) {
              const ClusterResult res = spectral_clustering(g, k, seed);
              return py::make_tuple(res.labels, res.inertia);
          },
          py::arg("graph"), py::arg("k"), py::arg("seed") = 0);

    m.def("accuracy", &accuracy, py::arg("pred"), py::arg("truth"));
    m.def("nmi", &nmi, py::arg("pred"), py::arg("truth"));

    m.def("spectral_sparsify",
          [](const SparseGraph& g, double target_density, int r, double sigma,
             std::uint64_t seed) {
              SparsifyConfig cfg;
              cfg.target_density = target_density;
              cfg.r = r;
              cfg.sigma = sigma;
              cfg.seed = seed;
              return spectral_sparsify(g, cfg);
          },
          py::arg("graph"), py::arg("target_density"), py::arg("r") = 0,
          py::arg("sigma") = 1e9, py::arg("seed") = 0);

    m.def("gen_gaussian_graph", &gen_gaussian_graph, py::arg("n"), py::arg("theta"),
          py::arg("kappa"), py::arg("seed") = 0);
    m.def("gen_er_graph", &gen_er_graph, py::arg("n"), py::arg("p"), py::arg("seed") = 0);

    m.def("sample_smooth_signals",
          [](const SparseGraph& g, double sigma, int m_signals, std::uint64_t seed) {
              return sample_smooth_signals(build_laplacian(g), sigma, m_signals, seed).values();
          },
          py::arg("graph"), py::arg("sigma"), py::arg("m"), py::arg("seed") = 0);

    m.def("edge_set_metrics",
          [](const SparseGraph& learned, const SparseGraph& truth) {
              const RecoveryReport r = edge_set_metrics(learned, truth);
              py::dict d;
              d["precision"] = r.precision;
              d["recall"] = r.recall;
              d["f_measure"] = r.f_measure;
              d["nmi"] = r.nmi_edges;
              d["true_edges"] = r.true_edges;
              d["learned_edges"] = r.learned_edges;
              d["common_edges"] = r.common_edges;
              return d;
          },
          py::arg("learned"), py::arg("truth"));

    m.def("read_graph", &read_graph, py::arg("path"));
    m.def("write_graph", &write_graph, py::arg("graph"), py::arg("path"));
}
