#include "graspel/spectral.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "graspel/errors.hpp"
#include "graspel/rng.hpp"

namespace graspel {

namespace {

constexpr int kDenseCutoff = 512;
constexpr int kDenseRescueCutoff = 4096;

/// Flip each column so its largest-magnitude entry is positive.
void fix_sign(Eigen::MatrixXd& vecs) {
    for (int j = 0; j < vecs.cols(); ++j) {
        int arg = 0;
        double best = -1.0;
        for (int i = 0; i < vecs.rows(); ++i) {
            const double a = std::abs(vecs(i, j));
            if (a > best) {
                best = a;
                arg = i;
            }
        }
        if (vecs(arg, j) < 0.0) vecs.col(j) = -vecs.col(j);
    }
}

SpectralEmbedding dense_eigenpairs(const LaplacianMatrix& L, int r) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L.dense());
    if (es.info() != Eigen::Success)
        throw ConvergenceError("dense eigendecomposition failed",
                               std::numeric_limits<double>::quiet_NaN());
    SpectralEmbedding emb;
    emb.eigenvalues = es.eigenvalues().head(r);
    emb.eigenvectors = es.eigenvectors().leftCols(r);
    fix_sign(emb.eigenvectors);
    return emb;
}

/// Connected components of the sparsity pattern.
std::pair<int, std::vector<int>> pattern_components(const Eigen::SparseMatrix<double>& m) {
    const int n = static_cast<int>(m.rows());
    std::vector<int> labels(static_cast<std::size_t>(n), -1);
    int count = 0;
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
        if (labels[static_cast<std::size_t>(s)] != -1) continue;
        labels[static_cast<std::size_t>(s)] = count;
        stack.push_back(s);
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (Eigen::SparseMatrix<double>::InnerIterator it(m, u); it; ++it) {
                const int v = static_cast<int>(it.row());
                if (v != u && labels[static_cast<std::size_t>(v)] == -1) {
                    labels[static_cast<std::size_t>(v)] = count;
                    stack.push_back(v);
                }
            }
        }
        ++count;
    }
    return {count, std::move(labels)};
}

/// Orthonormal basis of the Laplacian nullspace: the global constant first,
/// then Gram-Schmidt over component indicators. Deterministic.
Eigen::MatrixXd nullspace_basis(int n, int count, const std::vector<int>& labels) {
    Eigen::MatrixXd basis(n, count);
    basis.col(0).setConstant(1.0 / std::sqrt(static_cast<double>(n)));
    for (int j = 1; j < count; ++j) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
        for (int i = 0; i < n; ++i)
            if (labels[static_cast<std::size_t>(i)] == j - 1) v(i) = 1.0;
        for (int i = 0; i < j; ++i) v -= basis.col(i).dot(v) * basis.col(i);
        basis.col(j) = v / v.norm();
    }
    return basis;
}

struct RitzPair {
    double value;
    Eigen::VectorXd vector;
    double residual;
};

/// Shift-inverted Lanczos with full reorthogonalization. The exact nullspace
/// is deflated up front, so only nonzero eigenpairs are iterated on.
SpectralEmbedding lanczos_smallest(const LaplacianMatrix& L, int r, const EigsOptions& opts) {
    const int n = L.size();
    const auto [comp_count, labels] = pattern_components(L.matrix());
    const Eigen::MatrixXd null_basis = nullspace_basis(n, comp_count, labels);

    const int k_null = std::min(r, comp_count);
    const int k_rest = r - k_null;

    SpectralEmbedding emb;
    emb.eigenvalues = Eigen::VectorXd::Zero(r);
    emb.eigenvectors.resize(n, r);
    emb.eigenvectors.leftCols(k_null) = null_basis.leftCols(k_null);
    if (k_rest == 0) {
        fix_sign(emb.eigenvectors);
        return emb;
    }

    const double gersh = 2.0 * L.degree_scale();  // upper bound on the spectrum
    const double mu = std::max(1e-8 * gersh, 1e-12);
    Eigen::SparseMatrix<double> shifted = L.matrix();
    Eigen::SparseMatrix<double> eye(n, n);
    eye.setIdentity();
    shifted += mu * eye;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(shifted);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("shifted Laplacian factorization failed",
                               std::numeric_limits<double>::quiet_NaN());

    const int complement = n - comp_count;
    const int cap = opts.max_subspace > 0
                        ? std::min(opts.max_subspace, complement)
                        : std::min(complement, std::max(600, 8 * k_rest));

    Eigen::MatrixXd V(n, cap);
    std::vector<double> alpha, beta;  // beta[j] couples step j and j+1
    Rng rng(mix_seed(opts.seed, 0x9a5c201ull));

    auto project_out = [&](Eigen::VectorXd& v) {
        v -= null_basis * (null_basis.transpose() * v);
    };
    auto fresh_vector = [&](int cols) -> bool {
        for (int attempt = 0; attempt < 32; ++attempt) {
            Eigen::VectorXd v(n);
            for (int i = 0; i < n; ++i) v(i) = rng.normal();
            project_out(v);
            if (cols > 0) v -= V.leftCols(cols) * (V.leftCols(cols).transpose() * v);
            const double norm = v.norm();
            if (norm > 1e-8) {
                V.col(cols) = v / norm;
                return true;
            }
        }
        return false;
    };

    if (!fresh_vector(0))
        throw ConvergenceError("could not seed the Lanczos iteration",
                               std::numeric_limits<double>::quiet_NaN());

    auto extract_ritz = [&](int m) {
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            T(i, i) = alpha[static_cast<std::size_t>(i)];
            if (i + 1 < m) {
                T(i, i + 1) = beta[static_cast<std::size_t>(i)];
                T(i + 1, i) = beta[static_cast<std::size_t>(i)];
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tes(T);
        std::vector<RitzPair> pairs;
        const int take = std::min(k_rest, m);
        for (int j = 0; j < take; ++j) {
            const int col = m - 1 - j;  // largest theta = smallest lambda
            const double theta = tes.eigenvalues()(col);
            if (!(theta > 0.0)) continue;
            RitzPair p;
            p.value = 1.0 / theta - mu;
            p.vector = V.leftCols(m) * tes.eigenvectors().col(col);
            p.vector.normalize();
            p.residual = (L.matrix() * p.vector - p.value * p.vector).norm();
            pairs.push_back(std::move(p));
        }
        std::sort(pairs.begin(), pairs.end(),
                  [](const RitzPair& a, const RitzPair& b) { return a.value < b.value; });
        return pairs;
    };

    int m = 0;
    int next_check = std::min(cap, std::max(2 * k_rest + 16, 40));
    std::vector<RitzPair> best;
    double best_worst_residual = std::numeric_limits<double>::infinity();

    while (m < cap) {
        Eigen::VectorXd w = solver.solve(V.col(m));
        project_out(w);
        const double a = V.col(m).dot(w);
        alpha.push_back(a);
        w -= a * V.col(m);
        if (m > 0) w -= beta[static_cast<std::size_t>(m - 1)] * V.col(m - 1);
        // full reorthogonalization, twice for safety
        for (int pass = 0; pass < 2; ++pass)
            w -= V.leftCols(m + 1) * (V.leftCols(m + 1).transpose() * w);
        const double b = w.norm();
        ++m;
        if (m < cap) {
            if (b < 1e-12) {
                beta.push_back(0.0);
                if (!fresh_vector(m)) break;  // complement exhausted
            } else {
                beta.push_back(b);
                V.col(m) = w / b;
            }
        }

        if (m == next_check || m == cap) {
            auto pairs = extract_ritz(m);
            if (static_cast<int>(pairs.size()) >= k_rest) {
                pairs.resize(static_cast<std::size_t>(k_rest));
                double worst = 0.0;
                double lam_max = 1.0;
                for (const auto& p : pairs) {
                    worst = std::max(worst, p.residual);
                    lam_max = std::max(lam_max, std::abs(p.value));
                }
                if (worst < best_worst_residual) {
                    best_worst_residual = worst;
                    best = pairs;
                }
                // The second term is the attainable floor at this weight
                // scale (a few ulps of the spectral radius).
                const double accept =
                    std::max(opts.residual_tol * lam_max, 1e-15 * gersh);
                if (worst <= accept) {
                    for (int j = 0; j < k_rest; ++j) {
                        emb.eigenvalues(k_null + j) = best[static_cast<std::size_t>(j)].value;
                        emb.eigenvectors.col(k_null + j) = best[static_cast<std::size_t>(j)].vector;
                    }
                    fix_sign(emb.eigenvectors);
                    return emb;
                }
            }
            next_check = std::min(cap, next_check + std::max(20, next_check / 2));
        }
    }

    if (opts.allow_dense_rescue && n <= kDenseRescueCutoff) return dense_eigenpairs(L, r);
    throw ConvergenceError("Lanczos iteration did not converge", best_worst_residual);
}

}  // namespace

SpectralEmbedding smallest_eigenpairs(const LaplacianMatrix& L, int r, const EigsOptions& opts) {
    const int n = L.size();
    if (r < 1 || r > n) throw std::invalid_argument("eigenpair count out of range");
    if (n <= kDenseCutoff) return dense_eigenpairs(L, r);
    return lanczos_smallest(L, r, opts);
}

SpectralEmbedding build_subspace(SpectralEmbedding emb, double sigma) {
    if (emb.num_pairs() < 2)
        throw std::invalid_argument("subspace needs at least two eigenpairs");
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    const int r = emb.num_pairs();
    const double reg = 1.0 / (sigma * sigma);
    emb.sigma = sigma;
    emb.subspace.resize(emb.eigenvectors.rows(), r - 1);
    for (int i = 1; i < r; ++i) {
        const double lam = std::max(emb.eigenvalues(i), 0.0);
        emb.subspace.col(i - 1) = emb.eigenvectors.col(i) / std::sqrt(lam + reg);
    }
    return emb;
}

double embedding_distance(const SpectralEmbedding& emb, int p, int q) {
    if (!emb.has_subspace()) throw std::invalid_argument("embedding subspace not built");
    if (p == q) return 0.0;
    return (emb.subspace.row(p) - emb.subspace.row(q)).squaredNorm();
}

CandidateEdge distortion(const SpectralEmbedding& emb, const DataMatrix& X, int p, int q) {
    CandidateEdge c;
    c.p = p;
    c.q = q;
    c.data_dist = data_distance(X, p, q);
    c.embed_dist = embedding_distance(emb, p, q);
    c.distortion = c.embed_dist / std::max(c.data_dist, kDataDistanceFloor);
    return c;
}

double objective_estimate(const Eigen::VectorXd& eigenvalues, const DataMatrix& X,
                          const LaplacianMatrix& L, double sigma, double beta) {
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    const double reg = 1.0 / (sigma * sigma);
    double logdet = 0.0;
    for (int i = 0; i < eigenvalues.size(); ++i)
        logdet += std::log(std::max(eigenvalues(i), 0.0) + reg);
    const double smooth = smoothness(L, X) / X.num_features();

    double l1 = L.size() * reg;
    const auto& m = L.matrix();
    for (int k = 0; k < m.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it)
            l1 += std::abs(it.value());

    return logdet - smooth - beta * l1;
}

double gradient_entry(const SparseGraph& g, const DataMatrix& X, double sigma, double beta,
                      int p, int q) {
    const int n = g.num_nodes();
    if (n > kDenseCutoff)
        throw std::invalid_argument("gradient_entry is a dense oracle; graph too large");
    if (p < 0 || q < 0 || p >= n || q >= n || p == q)
        throw std::invalid_argument("invalid node pair");
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    const LaplacianMatrix L = build_laplacian(g);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L.dense());
    const double reg = 1.0 / (sigma * sigma);
    double sensitivity = 0.0;
    for (int i = 1; i < n; ++i) {
        const double d = es.eigenvectors()(p, i) - es.eigenvectors()(q, i);
        sensitivity += d * d / (std::max(es.eigenvalues()(i), 0.0) + reg);
    }
    return sensitivity - data_distance(X, p, q) - beta;
}

Eigen::VectorXd eigenvalue_perturbation_estimate(const SpectralEmbedding& emb, int p, int q,
                                                 double w) {
    const int r = emb.num_pairs();
    Eigen::VectorXd deltas(r);
    for (int i = 0; i < r; ++i) {
        const double d = emb.eigenvectors(p, i) - emb.eigenvectors(q, i);
        deltas(i) = w * d * d;
    }
    return deltas;
}

}  // namespace graspel
