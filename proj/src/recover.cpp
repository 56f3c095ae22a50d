#include "graspel/recover.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "graspel/cluster.hpp"
#include "graspel/rng.hpp"

namespace graspel {

SparseGraph gen_gaussian_graph(int n, double theta, double kappa, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("need at least two nodes");
    if (!(theta > 0.0)) throw std::invalid_argument("theta must be positive");
    Rng rng(seed);
    std::vector<std::pair<double, double>> pts(static_cast<std::size_t>(n));
    for (auto& p : pts) {
        p.first = rng.uniform();
        p.second = rng.uniform();
    }
    SparseGraph g(n);
    const double denom = 2.0 * theta * theta;
    for (int p = 0; p < n; ++p) {
        for (int q = p + 1; q < n; ++q) {
            const double dx = pts[static_cast<std::size_t>(p)].first -
                              pts[static_cast<std::size_t>(q)].first;
            const double dy = pts[static_cast<std::size_t>(p)].second -
                              pts[static_cast<std::size_t>(q)].second;
            const double w = std::exp(-(dx * dx + dy * dy) / denom);
            if (w >= kappa) g.add_edge(p, q, w);
        }
    }
    return g;
}

SparseGraph gen_er_graph(int n, double p, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("need at least one node");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must be in [0,1]");
    Rng rng(seed);
    SparseGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.uniform() < p) g.add_edge(u, v, 1.0);
    return g;
}

DataMatrix sample_smooth_signals(const LaplacianMatrix& L, double sigma, int m,
                                 std::uint64_t seed) {
    const int n = L.size();
    if (n > 512) throw std::invalid_argument("signal sampler is dense; graph too large");
    if (m < 1) throw std::invalid_argument("need at least one signal");
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L.dense());
    const double reg = 1.0 / (sigma * sigma);
    Eigen::VectorXd filter(n);
    for (int i = 0; i < n; ++i)
        filter(i) = 1.0 / std::sqrt(std::max(es.eigenvalues()(i), 0.0) + reg);

    Rng rng(seed);
    Eigen::MatrixXd X(n, m);
    Eigen::VectorXd noise(n);
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < n; ++i) noise(i) = rng.normal();
        X.col(j) = es.eigenvectors() * filter.cwiseProduct(noise);
    }
    return DataMatrix(std::move(X), false);
}

RecoveryReport edge_set_metrics(const SparseGraph& learned, const SparseGraph& truth) {
    if (learned.num_nodes() != truth.num_nodes())
        throw std::invalid_argument("graphs differ in node count");
    const int n = learned.num_nodes();

    std::int64_t common = 0;
    for (const Edge& e : learned.edges())
        if (truth.has_edge(e.u, e.v)) ++common;

    RecoveryReport report;
    report.true_edges = truth.num_edges();
    report.learned_edges = learned.num_edges();
    report.common_edges = common;
    report.precision = report.learned_edges > 0
                           ? static_cast<double>(common) / static_cast<double>(report.learned_edges)
                           : 0.0;
    report.recall = report.true_edges > 0
                        ? static_cast<double>(common) / static_cast<double>(report.true_edges)
                        : 0.0;
    report.f_measure = (report.precision + report.recall) > 0.0
                           ? 2.0 * report.precision * report.recall /
                                 (report.precision + report.recall)
                           : 0.0;

    // Edge NMI over the presence/absence labeling of all unordered pairs.
    const std::size_t pairs = static_cast<std::size_t>(n) * (n - 1) / 2;
    std::vector<int> a(pairs), b(pairs);
    std::size_t idx = 0;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v, ++idx) {
            a[idx] = learned.has_edge(u, v) ? 1 : 0;
            b[idx] = truth.has_edge(u, v) ? 1 : 0;
        }
    }
    report.nmi_edges = nmi(a, b);
    return report;
}

RecoveryReport recovery_trial(const RecoverySetup& setup, const LearnConfig& cfg,
                              std::uint64_t seed) {
    const SparseGraph truth =
        setup.kind == TruthKind::kGaussian
            ? gen_gaussian_graph(setup.n, setup.theta, setup.kappa, mix_seed(seed, 1))
            : gen_er_graph(setup.n, setup.edge_prob, mix_seed(seed, 1));

    const DataMatrix X = sample_smooth_signals(build_laplacian(truth), setup.signal_sigma,
                                               setup.m, mix_seed(seed, 2));

    LearnConfig trial_cfg = cfg;
    trial_cfg.seed = mix_seed(seed, 3);
    trial_cfg.k_init = std::min(trial_cfg.k_init, setup.n - 1);
    if (setup.n < 3) {
        // Too small for the learning loop; the kNN graph is the answer.
        const SparseGraph learned = initial_knn_graph(center_rows(X), trial_cfg.k_init);
        return edge_set_metrics(learned, truth);
    }
    const LearnResult result = graspel_learn(X, trial_cfg);
    return edge_set_metrics(result.graph, truth);
}

RecoveryAggregate recovery_experiment(const RecoverySetup& setup, const LearnConfig& cfg,
                                      std::uint64_t seed) {
    if (setup.trials < 1) throw std::invalid_argument("need at least one trial");
    RecoveryAggregate agg;
    agg.trials.reserve(static_cast<std::size_t>(setup.trials));
    for (int t = 0; t < setup.trials; ++t)
        agg.trials.push_back(
            recovery_trial(setup, cfg, mix_seed(seed, 1000 + static_cast<std::uint64_t>(t))));

    auto collect = [&](auto getter) {
        double mean = 0.0;
        for (const auto& r : agg.trials) mean += getter(r);
        mean /= static_cast<double>(agg.trials.size());
        double var = 0.0;
        for (const auto& r : agg.trials) {
            const double d = getter(r) - mean;
            var += d * d;
        }
        const double sd =
            agg.trials.size() > 1 ? std::sqrt(var / static_cast<double>(agg.trials.size() - 1))
                                  : 0.0;
        return std::pair<double, double>(mean, sd);
    };

    std::tie(agg.mean.precision, agg.stddev.precision) =
        collect([](const RecoveryReport& r) { return r.precision; });
    std::tie(agg.mean.recall, agg.stddev.recall) =
        collect([](const RecoveryReport& r) { return r.recall; });
    std::tie(agg.mean.f_measure, agg.stddev.f_measure) =
        collect([](const RecoveryReport& r) { return r.f_measure; });
    std::tie(agg.mean.nmi_edges, agg.stddev.nmi_edges) =
        collect([](const RecoveryReport& r) { return r.nmi_edges; });
    return agg;
}

}  // namespace graspel
