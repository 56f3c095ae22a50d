// graspel: learn ultra-sparse graphs from data and run the downstream
// pipelines (spectral clustering, sparsification, embedding export, graph
// recovery). One subcommand per process; JSON report on stdout.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "graspel/cluster.hpp"
#include "graspel/errors.hpp"
#include "graspel/io.hpp"
#include "graspel/rng.hpp"
#include "graspel/learn.hpp"
#include "graspel/recover.hpp"
#include "graspel/sparsify.hpp"
#include "graspel/spectral.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNoConvergence = 3;

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

json trace_json(const graspel::LearnTrace& trace) {
    json arr = json::array();
    for (const auto& rec : trace.iterations) {
        json j{{"iter", rec.iter},
               {"eta_max", rec.max_distortion},
               {"edges_added", rec.edges_added},
               {"components", rec.components}};
        if (rec.objective) j["objective"] = *rec.objective;
        arr.push_back(j);
    }
    return arr;
}

struct LearnFlags {
    graspel::LearnConfig cfg;
    bool has_header = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--k-init", cfg.k_init, "initial nearest neighbors");
        cmd->add_option("--sigma", cfg.sigma, "prior feature std");
        cmd->add_option("--tol", cfg.tol, "distortion tolerance");
        cmd->add_option("--eps", cfg.eps, "window fraction of the node ordering");
        cmd->add_option("--zeta", cfg.zeta, "edge additions per iteration as a fraction of n");
        cmd->add_option("--max-iter", cfg.max_iter, "iteration cap");
        cmd->add_option("--r", cfg.r, "embedding eigenpairs");
        cmd->add_option("--seed", cfg.seed, "RNG seed");
        cmd->add_option("--sample-budget", cfg.sample_budget,
                        "candidate pairs per iteration (0 = 10n)");
        cmd->add_option("--beta", cfg.beta, "sparsity weight for the objective monitor");
        cmd->add_flag("--track-objective", cfg.track_objective,
                      "record the truncated objective per iteration");
    }
};

int cmd_learn(const std::string& data_path, const LearnFlags& flags,
              const std::string& graph_out, const std::string& trace_out) {
    Stopwatch total;
    Stopwatch ingest_watch;
    const graspel::DataMatrix X = graspel::ingest_csv(data_path, flags.has_header);
    const double ingest_s = ingest_watch.seconds();

    Stopwatch learn_watch;
    const graspel::LearnResult result = graspel::graspel_learn(X, flags.cfg);
    const double learn_s = learn_watch.seconds();

    if (result.trace.aborted) {
        std::cerr << "graspel: eigensolver failed: " << result.trace.abort_reason << "\n";
    }

    graspel::write_graph(result.graph, graph_out);
    if (!trace_out.empty()) graspel::write_trace(result.trace, trace_out);

    const graspel::ComponentInfo comps = graspel::connected_components(result.graph);
    json report{
        {"command", "learn"},
        {"config",
         {{"k_init", flags.cfg.k_init},
          {"sigma", flags.cfg.sigma},
          {"tol", flags.cfg.tol},
          {"eps", flags.cfg.eps},
          {"zeta", flags.cfg.zeta},
          {"max_iter", flags.cfg.max_iter},
          {"r", flags.cfg.r},
          {"seed", flags.cfg.seed},
          {"sample_budget", flags.cfg.sample_budget}}},
        {"timings", {{"ingest_s", ingest_s}, {"construction_s", learn_s}}},
        {"outputs", {{"graph", graph_out}}},
        {"metrics",
         {{"nodes", result.graph.num_nodes()},
          {"edges", result.graph.num_edges()},
          {"density", result.graph.density()},
          {"components", comps.count},
          {"iterations", result.trace.iterations.size()},
          {"converged", result.trace.converged},
          {"eta_max_final", result.trace.iterations.empty()
                                ? 0.0
                                : result.trace.iterations.back().max_distortion}}}};
    if (!trace_out.empty()) report["outputs"]["trace"] = trace_out;
    report["timings"]["total_s"] = total.seconds();
    std::cout << report.dump(2) << "\n";

    if (result.trace.aborted) return kExitNoConvergence;
    return result.trace.converged ? kExitOk : kExitNoConvergence;
}

int cmd_cluster(const std::string& graph_path, int k, std::uint64_t seed,
                const std::string& truth_path, const std::string& labels_out) {
    const graspel::SparseGraph g = graspel::read_graph(graph_path);
    if (k < 2 || k > g.num_nodes())
        throw std::invalid_argument("k must lie in [2, number of nodes]");

    // Time the eigendecomposition separately from k-means.
    Stopwatch eig_watch;
    const graspel::LaplacianMatrix L = graspel::build_laplacian(g);
    const graspel::ComponentInfo comps = graspel::connected_components(g);
    const int first = comps.count == 1 ? 1 : 0;
    const int cols = std::min(k, g.num_nodes() - first);
    graspel::EigsOptions eopts;
    eopts.seed = seed;
    const graspel::SpectralEmbedding emb =
        graspel::smallest_eigenpairs(L, first + cols, eopts);
    const double eig_s = eig_watch.seconds();

    Stopwatch kmeans_watch;
    const Eigen::MatrixXd coords = emb.eigenvectors.middleCols(first, cols);
    graspel::ClusterResult best;
    best.inertia = std::numeric_limits<double>::infinity();
    for (int rep = 0; rep < 10; ++rep) {
        graspel::ClusterResult run =
            graspel::kmeans(coords, k, graspel::mix_seed(seed, static_cast<std::uint64_t>(rep)));
        if (run.inertia < best.inertia) best = std::move(run);
    }
    const double kmeans_s = kmeans_watch.seconds();

    graspel::write_labels(best.labels, labels_out);

    json report{{"command", "cluster"},
                {"config", {{"k", k}, {"seed", seed}}},
                {"timings", {{"eigendecomposition_s", eig_s}, {"kmeans_s", kmeans_s}}},
                {"outputs", {{"labels", labels_out}}},
                {"metrics",
                 {{"inertia", best.inertia},
                  {"empty_cluster", best.empty_cluster},
                  {"components", comps.count}}}};
    if (!truth_path.empty()) {
        const std::vector<int> truth = graspel::read_labels(truth_path);
        report["metrics"]["accuracy"] = graspel::accuracy(best.labels, truth);
        report["metrics"]["nmi"] = graspel::nmi(best.labels, truth);
    }
    std::cout << report.dump(2) << "\n";
    return kExitOk;
}

int cmd_sparsify(const std::string& graph_path, const graspel::SparsifyConfig& cfg,
                 const std::string& graph_out) {
    const graspel::SparseGraph g = graspel::read_graph(graph_path);
    Stopwatch watch;
    const graspel::SparseGraph sparse = graspel::spectral_sparsify(g, cfg);
    const double sparsify_s = watch.seconds();
    graspel::write_graph(sparse, graph_out);

    json report{{"command", "sparsify"},
                {"config",
                 {{"target_density", cfg.target_density},
                  {"r", cfg.r},
                  {"sigma", cfg.sigma},
                  {"seed", cfg.seed}}},
                {"timings", {{"sparsify_s", sparsify_s}}},
                {"outputs", {{"graph", graph_out}}},
                {"metrics",
                 {{"input_edges", g.num_edges()},
                  {"input_density", g.density()},
                  {"output_edges", sparse.num_edges()},
                  {"output_density", sparse.density()}}}};
    std::cout << report.dump(2) << "\n";
    return kExitOk;
}

int cmd_embed(const std::string& graph_path, int r, double sigma, std::uint64_t seed,
              const std::string& embedding_out) {
    const graspel::SparseGraph g = graspel::read_graph(graph_path);
    Stopwatch watch;
    graspel::EigsOptions eopts;
    eopts.seed = seed;
    const graspel::SpectralEmbedding emb = graspel::build_subspace(
        graspel::smallest_eigenpairs(graspel::build_laplacian(g), r, eopts), sigma);
    const double embed_s = watch.seconds();
    graspel::write_embedding(emb, embedding_out);

    json report{{"command", "embed"},
                {"config", {{"r", r}, {"sigma", sigma}, {"seed", seed}}},
                {"timings", {{"embed_s", embed_s}}},
                {"outputs", {{"embedding", embedding_out}}},
                {"metrics", {{"dims", emb.subspace.cols()}}}};
    std::cout << report.dump(2) << "\n";
    return kExitOk;
}

json report_json(const graspel::RecoveryReport& r) {
    return json{{"precision", r.precision},   {"recall", r.recall},
                {"f_measure", r.f_measure},   {"nmi", r.nmi_edges},
                {"true_edges", r.true_edges}, {"learned_edges", r.learned_edges},
                {"common_edges", r.common_edges}};
}

int cmd_recover(const graspel::RecoverySetup& setup, const LearnFlags& flags,
                std::uint64_t seed) {
    Stopwatch watch;
    const graspel::RecoveryAggregate agg =
        graspel::recovery_experiment(setup, flags.cfg, seed);
    const double total_s = watch.seconds();

    json trials = json::array();
    for (const auto& t : agg.trials) trials.push_back(report_json(t));
    json report{
        {"command", "recover"},
        {"config",
         {{"kind", setup.kind == graspel::TruthKind::kGaussian ? "gaussian" : "er"},
          {"n", setup.n},
          {"m", setup.m},
          {"theta", setup.theta},
          {"kappa", setup.kappa},
          {"p", setup.edge_prob},
          {"signal_sigma", setup.signal_sigma},
          {"trials", setup.trials},
          {"seed", seed},
          {"k_init", flags.cfg.k_init},
          {"tol", flags.cfg.tol}}},
        {"timings", {{"total_s", total_s}}},
        {"metrics",
         {{"trials", trials},
          {"mean", report_json(agg.mean)},
          {"stddev", report_json(agg.stddev)}}}};
    std::cout << report.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral graph learning toolkit"};
    app.require_subcommand(1);

    // learn
    auto* learn = app.add_subcommand("learn", "learn a graph from CSV data");
    std::string data_path;
    std::string graph_out = "graph.tsv";
    std::string trace_out;
    LearnFlags learn_flags;
    learn->add_option("data", data_path, "CSV file, rows are data points")->required();
    learn->add_flag("--has-header", learn_flags.has_header, "skip the first CSV line");
    learn->add_option("--out", graph_out, "output edge list");
    learn->add_option("--trace", trace_out, "JSON-lines trace output");
    learn_flags.attach(learn);

    // cluster
    auto* cluster = app.add_subcommand("cluster", "spectral clustering of a graph file");
    std::string cluster_graph;
    int cluster_k = 2;
    std::uint64_t cluster_seed = 0;
    std::string truth_path;
    std::string labels_out = "labels.txt";
    cluster->add_option("graph", cluster_graph, "edge-list file")->required();
    cluster->add_option("--k", cluster_k, "number of clusters")->required();
    cluster->add_option("--seed", cluster_seed, "RNG seed");
    cluster->add_option("--truth", truth_path, "ground-truth labels for ACC/NMI");
    cluster->add_option("--labels", labels_out, "output labels file");

    // sparsify
    auto* sparsify = app.add_subcommand("sparsify", "spectral sparsification of a graph file");
    std::string sparsify_graph;
    std::string sparsify_out = "sparse.tsv";
    graspel::SparsifyConfig sparsify_cfg;
    sparsify->add_option("graph", sparsify_graph, "edge-list file")->required();
    sparsify->add_option("--target-density", sparsify_cfg.target_density, "target |E|/|V|")
        ->required();
    sparsify->add_option("--r", sparsify_cfg.r, "eigenpairs for the resistance proxy");
    sparsify->add_option("--sigma", sparsify_cfg.sigma, "embedding sigma");
    sparsify->add_option("--seed", sparsify_cfg.seed, "RNG seed");
    sparsify->add_option("--out", sparsify_out, "output edge list");

    // embed
    auto* embed = app.add_subcommand("embed", "export spectral embedding coordinates");
    std::string embed_graph;
    int embed_r = 4;
    double embed_sigma = 1e3;
    std::uint64_t embed_seed = 0;
    std::string embed_out = "embedding.tsv";
    embed->add_option("graph", embed_graph, "edge-list file")->required();
    embed->add_option("--r", embed_r, "eigenpairs (exports r-1 coordinates)");
    embed->add_option("--sigma", embed_sigma, "embedding sigma");
    embed->add_option("--seed", embed_seed, "RNG seed");
    embed->add_option("--out", embed_out, "output coordinate file");

    // recover
    auto* recover = app.add_subcommand("recover", "synthetic graph recovery experiment");
    graspel::RecoverySetup setup;
    std::string kind = "gaussian";
    LearnFlags recover_flags;
    recover_flags.cfg.k_init = 6;  // denser truth graphs than the clustering pipelines
    recover->add_option("--kind", kind, "gaussian or er")
        ->check(CLI::IsMember({"gaussian", "er"}));
    recover->add_option("--n", setup.n, "nodes in the ground-truth graph");
    recover->add_option("--m", setup.m, "signal count");
    recover->add_option("--trials", setup.trials, "number of repetitions");
    recover->add_option("--theta", setup.theta, "Gaussian kernel width");
    recover->add_option("--kappa", setup.kappa, "Gaussian weight threshold");
    recover->add_option("--p", setup.edge_prob, "ER edge probability");
    recover->add_option("--signal-sigma", setup.signal_sigma, "GMRF sigma for sampling");
    recover_flags.attach(recover);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*learn) return cmd_learn(data_path, learn_flags, graph_out, trace_out);
        if (*cluster)
            return cmd_cluster(cluster_graph, cluster_k, cluster_seed, truth_path, labels_out);
        if (*sparsify) return cmd_sparsify(sparsify_graph, sparsify_cfg, sparsify_out);
        if (*embed) return cmd_embed(embed_graph, embed_r, embed_sigma, embed_seed, embed_out);
        if (*recover) {
            setup.kind = kind == "er" ? graspel::TruthKind::kEr : graspel::TruthKind::kGaussian;
            return cmd_recover(setup, recover_flags, recover_flags.cfg.seed);
        }
    } catch (const graspel::ConvergenceError& e) {
        std::cerr << "graspel: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const graspel::ParseError& e) {
        std::cerr << "graspel: " << e.what() << "\n";
        return kExitData;
    } catch (const graspel::DisconnectedError& e) {
        std::cerr << "graspel: " << e.what() << "\n";
        return kExitData;
    } catch (const std::invalid_argument& e) {
        std::cerr << "graspel: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "graspel: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
