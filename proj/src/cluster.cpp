#include "graspel/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "graspel/rng.hpp"
#include "graspel/spectral.hpp"

namespace graspel {

namespace {

std::vector<int> densify_labels(const std::vector<int>& labels, int& count) {
    std::map<int, int> remap;
    std::vector<int> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto [it, inserted] = remap.emplace(labels[i], static_cast<int>(remap.size()));
        out[i] = it->second;
    }
    count = static_cast<int>(remap.size());
    return out;
}

}  // namespace

ClusterResult kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed) {
    const int n = static_cast<int>(points.rows());
    if (k < 1 || k > n) throw std::invalid_argument("cluster count out of range");

    Rng rng(seed);
    Eigen::MatrixXd centers(k, points.cols());
    centers.row(0) = points.row(static_cast<int>(rng.integer(static_cast<std::uint64_t>(n))));
    Eigen::VectorXd d2 = (points.rowwise() - centers.row(0)).rowwise().squaredNorm();
    for (int j = 1; j < k; ++j) {
        const double total = d2.sum();
        int pick = 0;
        if (total > 0.0) {
            const double t = rng.uniform() * total;
            double cum = 0.0;
            pick = n - 1;
            for (int i = 0; i < n; ++i) {
                cum += d2(i);
                if (t < cum) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = static_cast<int>(rng.integer(static_cast<std::uint64_t>(n)));
        }
        centers.row(j) = points.row(pick);
        d2 = d2.cwiseMin((points.rowwise() - centers.row(j)).rowwise().squaredNorm());
    }

    ClusterResult result;
    result.k = k;
    result.labels.assign(static_cast<std::size_t>(n), 0);
    std::vector<int> prev(static_cast<std::size_t>(n), -1);
    for (int round = 0; round < 300; ++round) {
        for (int i = 0; i < n; ++i) {
            int arg = 0;
            double best = std::numeric_limits<double>::infinity();
            for (int j = 0; j < k; ++j) {
                const double d = (points.row(i) - centers.row(j)).squaredNorm();
                if (d < best) {
                    best = d;
                    arg = j;
                }
            }
            result.labels[static_cast<std::size_t>(i)] = arg;
        }
        if (result.labels == prev) break;
        prev = result.labels;

        Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, points.cols());
        std::vector<int> counts(static_cast<std::size_t>(k), 0);
        for (int i = 0; i < n; ++i) {
            sums.row(result.labels[static_cast<std::size_t>(i)]) += points.row(i);
            ++counts[static_cast<std::size_t>(result.labels[static_cast<std::size_t>(i)])];
        }
        for (int j = 0; j < k; ++j) {
            if (counts[static_cast<std::size_t>(j)] > 0)
                centers.row(j) = sums.row(j) / counts[static_cast<std::size_t>(j)];
            else
                result.empty_cluster = true;  // keep the stale center
        }
    }

    result.inertia = 0.0;
    for (int i = 0; i < n; ++i)
        result.inertia +=
            (points.row(i) - centers.row(result.labels[static_cast<std::size_t>(i)])).squaredNorm();
    return result;
}

ClusterResult spectral_clustering(const SparseGraph& g, int k, std::uint64_t seed) {
    const int n = g.num_nodes();
    if (k < 2 || k > n) throw std::invalid_argument("cluster count out of range");

    const LaplacianMatrix L = build_laplacian(g);
    const ComponentInfo comps = connected_components(g);
    // Connected graphs skip the trivial eigenvector; disconnected ones keep
    // the whole zero block, which carries the component structure.
    const int first = comps.count == 1 ? 1 : 0;
    const int cols = std::min(k, n - first);
    EigsOptions eopts;
    eopts.seed = seed;
    const SpectralEmbedding emb = smallest_eigenpairs(L, first + cols, eopts);
    const Eigen::MatrixXd coords = emb.eigenvectors.middleCols(first, cols);

    ClusterResult best;
    best.inertia = std::numeric_limits<double>::infinity();
    for (int rep = 0; rep < 10; ++rep) {
        ClusterResult run = kmeans(coords, k, mix_seed(seed, static_cast<std::uint64_t>(rep)));
        if (run.inertia < best.inertia) best = std::move(run);
    }
    return best;
}

double accuracy(const std::vector<int>& pred, const std::vector<int>& truth) {
    if (pred.size() != truth.size()) throw std::invalid_argument("label vectors differ in length");
    if (pred.empty()) throw std::invalid_argument("label vectors are empty");
    int a = 0, b = 0;
    const std::vector<int> p = densify_labels(pred, a);
    const std::vector<int> t = densify_labels(truth, b);
    const int s = std::max(a, b);
    Eigen::MatrixXd confusion = Eigen::MatrixXd::Zero(s, s);
    for (std::size_t i = 0; i < p.size(); ++i) confusion(p[i], t[i]) += 1.0;

    const std::vector<int> assign = hungarian(-confusion);
    double matched = 0.0;
    for (int i = 0; i < s; ++i) matched += confusion(i, assign[static_cast<std::size_t>(i)]);
    return matched / static_cast<double>(p.size());
}

double nmi(const std::vector<int>& pred, const std::vector<int>& truth) {
    if (pred.size() != truth.size()) throw std::invalid_argument("label vectors differ in length");
    if (pred.empty()) throw std::invalid_argument("label vectors are empty");
    int a = 0, b = 0;
    const std::vector<int> p = densify_labels(pred, a);
    const std::vector<int> t = densify_labels(truth, b);
    const double n = static_cast<double>(p.size());

    Eigen::MatrixXd joint = Eigen::MatrixXd::Zero(a, b);
    for (std::size_t i = 0; i < p.size(); ++i) joint(p[i], t[i]) += 1.0;
    const Eigen::VectorXd rows = joint.rowwise().sum();
    const Eigen::VectorXd cols = joint.colwise().sum();

    double hp = 0.0, hq = 0.0;
    for (int i = 0; i < a; ++i)
        if (rows(i) > 0.0) hp -= rows(i) / n * std::log(rows(i) / n);
    for (int j = 0; j < b; ++j)
        if (cols(j) > 0.0) hq -= cols(j) / n * std::log(cols(j) / n);
    if (hp <= 0.0 || hq <= 0.0) return 0.0;

    double mi = 0.0;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j)
            if (joint(i, j) > 0.0)
                mi += joint(i, j) / n * std::log(n * joint(i, j) / (rows(i) * cols(j)));
    return std::clamp(mi / std::sqrt(hp * hq), 0.0, 1.0);
}

std::vector<int> hungarian(const Eigen::MatrixXd& cost) {
    const int n = static_cast<int>(cost.rows());
    if (cost.cols() != n) throw std::invalid_argument("cost matrix must be square");
    if (n == 0) return {};
    constexpr double kInf = std::numeric_limits<double>::infinity();

    std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<double> v(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<int> match(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> way(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<double> minv(static_cast<std::size_t>(n) + 1, kInf);
        std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
        do {
            used[static_cast<std::size_t>(j0)] = 1;
            const int i0 = match[static_cast<std::size_t>(j0)];
            int j1 = -1;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] -
                                   v[static_cast<std::size_t>(j)];
                if (cur < minv[static_cast<std::size_t>(j)]) {
                    minv[static_cast<std::size_t>(j)] = cur;
                    way[static_cast<std::size_t>(j)] = j0;
                }
                if (minv[static_cast<std::size_t>(j)] < delta) {
                    delta = minv[static_cast<std::size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) {
                    u[static_cast<std::size_t>(match[static_cast<std::size_t>(j)])] += delta;
                    v[static_cast<std::size_t>(j)] -= delta;
                } else {
                    minv[static_cast<std::size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (match[static_cast<std::size_t>(j0)] != 0);
        do {
            const int j1 = way[static_cast<std::size_t>(j0)];
            match[static_cast<std::size_t>(j0)] = match[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<int> assign(static_cast<std::size_t>(n), -1);
    for (int j = 1; j <= n; ++j)
        if (match[static_cast<std::size_t>(j)] > 0)
            assign[static_cast<std::size_t>(match[static_cast<std::size_t>(j)]) - 1] = j - 1;
    return assign;
}

int eigengap_dimension(const Eigen::VectorXd& eigenvalues, int max_k) {
    const int len = static_cast<int>(eigenvalues.size());
    if (len < 2) throw std::invalid_argument("need at least two eigenvalues");
    if (max_k < 1) throw std::invalid_argument("max_k must be positive");
    for (int i = 1; i < len; ++i)
        if (eigenvalues(i) < eigenvalues(i - 1) - 1e-12)
            throw std::invalid_argument("eigenvalues must be ascending");

    const double cut = 1e-8 * std::max(1.0, std::abs(eigenvalues(len - 1)));
    int zeros = 0;
    while (zeros < len && eigenvalues(zeros) < cut) ++zeros;
    if (len - zeros < 2) throw std::invalid_argument("need at least two nonzero eigenvalues");

    const int hi = std::min(len, zeros + max_k);
    int best = 1;
    double best_gap = -1.0;
    for (int i = 1; i < hi; ++i) {
        const double gap = eigenvalues(i) - eigenvalues(i - 1);
        if (gap > best_gap) {
            best_gap = gap;
            best = i;
        }
    }
    return best;
}

}  // namespace graspel
