#include "graspel/learn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "graspel/errors.hpp"
#include "graspel/rng.hpp"

namespace graspel {

namespace {

/// ceil(frac * n) with a guard against 0.05 * 100 = 5.000000000000001.
int ceil_fraction(double frac, int n) {
    return std::max(1, static_cast<int>(std::ceil(frac * static_cast<double>(n) - 1e-9)));
}

std::vector<int> order_by_entries(const Eigen::VectorXd& values) {
    std::vector<int> order(static_cast<std::size_t>(values.size()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return values(a) != values(b) ? values(a) < values(b) : a < b;
    });
    return order;
}

}  // namespace

void LearnConfig::validate() const {
    if (k_init < 1) throw std::invalid_argument("k_init must be at least 1");
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (!(eps > 0.0 && eps <= 0.5)) throw std::invalid_argument("eps must lie in (0, 0.5]");
    if (!(zeta > 0.0)) throw std::invalid_argument("zeta must be positive");
    if (max_iter < 0) throw std::invalid_argument("max_iter must be non-negative");
    if (r < 2) throw std::invalid_argument("r must be at least 2");
    if (sample_budget < 0) throw std::invalid_argument("sample_budget must be non-negative");
    if (objective_r_trunc < 1) throw std::invalid_argument("objective_r_trunc must be positive");
}

SparseGraph initial_knn_graph(const DataMatrix& X, int k) {
    const int n = X.num_points();
    const int m = X.num_features();
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    if (k >= n) throw std::invalid_argument("k must be below the number of points");

    const Eigen::MatrixXd& V = X.values();
    SparseGraph g(n);
    std::vector<std::pair<double, int>> cand;
    cand.reserve(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) {
        cand.clear();
        for (int q = 0; q < n; ++q) {
            if (q == p) continue;
            cand.emplace_back((V.row(p) - V.row(q)).squaredNorm(), q);
        }
        std::partial_sort(cand.begin(), cand.begin() + k, cand.end());
        for (int j = 0; j < k; ++j) {
            const auto& [d2, q] = cand[static_cast<std::size_t>(j)];
            if (g.has_edge(p, q)) continue;
            const double z = std::max(d2 / static_cast<double>(m), kDataDistanceFloor);
            g.add_edge(p, q, 1.0 / z);
        }
    }
    return g;
}

std::vector<int> fiedler_order(const SparseGraph& g, std::uint64_t seed) {
    if (g.num_nodes() < 2) throw std::invalid_argument("ordering needs at least two nodes");
    EigsOptions opts;
    opts.seed = seed;
    const SpectralEmbedding emb = smallest_eigenpairs(build_laplacian(g), 2, opts);
    return order_by_entries(emb.eigenvectors.col(1));
}

std::vector<std::pair<int, int>> generate_candidates(const std::vector<int>& order, double eps,
                                                     std::int64_t sample_budget,
                                                     const SparseGraph& g, std::uint64_t seed) {
    const int n = static_cast<int>(order.size());
    if (n < 2) throw std::invalid_argument("need at least two nodes");
    if (!(eps > 0.0 && eps <= 0.5)) throw std::invalid_argument("eps must lie in (0, 0.5]");
    const int window = std::min(n, ceil_fraction(eps, n));
    const std::int64_t product =
        static_cast<std::int64_t>(window) * static_cast<std::int64_t>(window);

    std::vector<std::pair<int, int>> pairs;
    std::unordered_set<std::uint64_t> seen;
    auto offer = [&](int a, int b) {
        if (a == b) return;
        if (a > b) std::swap(a, b);
        if (g.has_edge(a, b)) return;
        const std::uint64_t key =
            static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(n) +
            static_cast<std::uint64_t>(b);
        if (!seen.insert(key).second) return;
        pairs.emplace_back(a, b);
    };

    if (product <= sample_budget) {
        // Window product fits the budget: enumerate every valid pair.
        for (int i = 0; i < window; ++i)
            for (int j = 0; j < window; ++j)
                offer(order[static_cast<std::size_t>(i)],
                      order[static_cast<std::size_t>(n - window + j)]);
    } else {
        Rng rng(mix_seed(seed, 0xca9d1));
        const std::int64_t max_tries = 20 * std::max<std::int64_t>(sample_budget, 1);
        for (std::int64_t t = 0;
             t < max_tries && static_cast<std::int64_t>(pairs.size()) < sample_budget; ++t) {
            const int i = static_cast<int>(rng.integer(static_cast<std::uint64_t>(window)));
            const int j = static_cast<int>(rng.integer(static_cast<std::uint64_t>(window)));
            offer(order[static_cast<std::size_t>(i)],
                  order[static_cast<std::size_t>(n - window + j)]);
        }
    }
    return pairs;
}

LearnResult graspel_learn(const DataMatrix& X, const LearnConfig& cfg) {
    cfg.validate();
    const int n = X.num_points();
    if (n < std::max(cfg.k_init + 1, 3)) throw std::invalid_argument("too few data points");

    SparseGraph g = initial_knn_graph(X, cfg.k_init);
    const std::int64_t budget =
        cfg.sample_budget > 0 ? cfg.sample_budget : 10LL * static_cast<std::int64_t>(n);
    const int per_iter = ceil_fraction(cfg.zeta, n);
    const int r = std::min(cfg.r, n);

    LearnTrace trace;
    for (int iter = 1; iter <= cfg.max_iter; ++iter) {
        const LaplacianMatrix L = build_laplacian(g);
        const ComponentInfo comps = connected_components(g);

        EigsOptions eopts;
        eopts.seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(iter));
        eopts.max_subspace = cfg.eig_max_subspace;
        eopts.allow_dense_rescue = cfg.eig_allow_dense_rescue;
        SpectralEmbedding emb;
        try {
            emb = build_subspace(smallest_eigenpairs(L, r, eopts), cfg.sigma);
        } catch (const ConvergenceError& e) {
            trace.aborted = true;
            trace.abort_reason = e.what();
            break;
        }

        IterationRecord rec;
        rec.iter = iter;
        rec.components = comps.count;
        if (cfg.track_objective) {
            const int r_trunc = std::min(cfg.objective_r_trunc, n);
            Eigen::VectorXd evals;
            if (r_trunc <= r) {
                evals = emb.eigenvalues.head(r_trunc);
            } else {
                EigsOptions mopts = eopts;
                mopts.seed = mix_seed(cfg.seed, 0x0b9ull * iter);
                evals = smallest_eigenpairs(L, r_trunc, mopts).eigenvalues;
            }
            rec.objective = objective_estimate(evals, X, L, cfg.sigma, cfg.beta);
        }

        const std::vector<int> order = order_by_entries(emb.eigenvectors.col(1));
        const auto pairs = generate_candidates(
            order, cfg.eps, budget, g, mix_seed(cfg.seed, 0x51ull + 2 * iter));
        if (pairs.empty()) {
            rec.max_distortion = 0.0;
            trace.iterations.push_back(rec);
            trace.converged = true;
            break;
        }

        std::vector<CandidateEdge> scored;
        scored.reserve(pairs.size());
        double eta_max = 0.0;
        for (const auto& [p, q] : pairs) {
            CandidateEdge c = distortion(emb, X, p, q);
            eta_max = std::max(eta_max, c.distortion);
            if (c.distortion > cfg.tol) scored.push_back(c);
        }
        rec.max_distortion = eta_max;

        if (scored.empty()) {
            trace.iterations.push_back(rec);
            trace.converged = true;
            break;
        }

        std::sort(scored.begin(), scored.end(), [](const CandidateEdge& a, const CandidateEdge& b) {
            if (a.distortion != b.distortion) return a.distortion > b.distortion;
            return a.p != b.p ? a.p < b.p : a.q < b.q;
        });
        const int take = std::min<int>(per_iter, static_cast<int>(scored.size()));
        for (int i = 0; i < take; ++i) {
            const CandidateEdge& c = scored[static_cast<std::size_t>(i)];
            g.add_edge(c.p, c.q, 1.0 / std::max(c.data_dist, kDataDistanceFloor));
        }
        rec.edges_added = take;
        trace.iterations.push_back(rec);
    }
    return {std::move(g), std::move(trace)};
}

StabilityReport stability_report(const SparseGraph& g, const DataMatrix& X,
                                 const LearnConfig& cfg) {
    cfg.validate();
    const int n = g.num_nodes();
    const LaplacianMatrix L = build_laplacian(g);

    EigsOptions eopts;
    eopts.seed = mix_seed(cfg.seed, 0xf0e5ull);
    const int r = std::min(cfg.r, n);
    const SpectralEmbedding emb = build_subspace(smallest_eigenpairs(L, r, eopts), cfg.sigma);

    const std::vector<int> order = order_by_entries(emb.eigenvectors.col(1));
    const std::int64_t budget =
        cfg.sample_budget > 0 ? cfg.sample_budget : 10LL * static_cast<std::int64_t>(n);
    const auto pairs =
        generate_candidates(order, cfg.eps, budget, g, mix_seed(cfg.seed, 0xf2e5ull));

    StabilityReport report;
    for (const auto& [p, q] : pairs)
        report.max_distortion =
            std::max(report.max_distortion, distortion(emb, X, p, q).distortion);

    const int r_trunc = std::min(cfg.objective_r_trunc, n);
    if (r_trunc <= r) {
        report.eigenvalues = emb.eigenvalues.head(r_trunc);
    } else {
        EigsOptions vopts;
        vopts.seed = mix_seed(cfg.seed, 0xe16ull);
        report.eigenvalues = smallest_eigenpairs(L, r_trunc, vopts).eigenvalues;
    }
    return report;
}

}  // namespace graspel
