#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "graspel/data.hpp"
#include "graspel/graph.hpp"

namespace graspel {

/// The r algebraically smallest Laplacian eigenpairs. After build_subspace,
/// `subspace` holds the sigma-weighted embedding basis whose column i-1 is
/// u_i / sqrt(lambda_i + 1/sigma^2) for i = 2..r (the trivial eigenvector is
/// skipped).
struct SpectralEmbedding {
    Eigen::VectorXd eigenvalues;   // ascending
    Eigen::MatrixXd eigenvectors;  // n x r, orthonormal columns, sign-fixed
    double sigma = 0.0;
    Eigen::MatrixXd subspace;  // n x (r-1); empty until build_subspace

    int num_pairs() const { return static_cast<int>(eigenvalues.size()); }
    bool has_subspace() const { return subspace.size() > 0; }
};

struct EigsOptions {
    std::uint64_t seed = 0;
    double residual_tol = 1e-8;  // relative to max(1, largest returned eigenvalue)
    int max_subspace = 0;        // Krylov cap; 0 picks automatically
    bool allow_dense_rescue = true;
};

/// Smallest r eigenpairs of L, ascending. Dense decomposition up to 512
/// nodes; above that a shift-inverted Lanczos iteration with the component
/// nullspace deflated exactly. Deterministic for a fixed seed.
SpectralEmbedding smallest_eigenpairs(const LaplacianMatrix& L, int r,
                                      const EigsOptions& opts = {});

SpectralEmbedding build_subspace(SpectralEmbedding emb, double sigma);

/// Squared distance between rows p and q of the embedding subspace.
double embedding_distance(const SpectralEmbedding& emb, int p, int q);

struct CandidateEdge {
    int p = 0;
    int q = 0;
    double data_dist = 0.0;   // squared data distance, feature-averaged
    double embed_dist = 0.0;  // squared embedding distance
    double distortion = 0.0;  // embed_dist / max(data_dist, floor)
};

/// Embedding distortion of a node pair: how much farther apart the pair sits
/// in the spectral embedding than in data space.
CandidateEdge distortion(const SpectralEmbedding& emb, const DataMatrix& X, int p, int q);

/// Truncated log-det surrogate of the learning objective:
///   sum_i log(lambda_i + 1/sigma^2) - Tr(X^T L X)/M - beta * |L + I/sigma^2|_1
/// with the sum running over the supplied (leading) eigenvalues only.
double objective_estimate(const Eigen::VectorXd& eigenvalues, const DataMatrix& X,
                          const LaplacianMatrix& L, double sigma, double beta);

/// Exact objective derivative with respect to the weight of pair (p, q),
/// using all n eigenpairs. Dense; test oracle for small graphs.
double gradient_entry(const SparseGraph& g, const DataMatrix& X, double sigma, double beta,
                      int p, int q);

/// First-order eigenvalue shifts w * (u_i^T e_pq)^2 for every held pair.
Eigen::VectorXd eigenvalue_perturbation_estimate(const SpectralEmbedding& emb, int p, int q,
                                                 double w);

}  // namespace graspel
