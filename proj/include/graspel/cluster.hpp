#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "graspel/graph.hpp"

namespace graspel {

struct ClusterResult {
    std::vector<int> labels;
    int k = 0;
    double inertia = 0.0;
    bool empty_cluster = false;
};

/// Lloyd iterations from a distance-weighted (k-means++ style) seeded
/// initialization, until the assignment reaches a fixpoint or 300 rounds.
ClusterResult kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed);

/// Unnormalized spectral clustering: embed with the k eigenvectors past the
/// trivial one (the whole zero block is kept when the graph is
/// disconnected), then best-of-10 seeded k-means restarts.
ClusterResult spectral_clustering(const SparseGraph& g, int k, std::uint64_t seed);

/// Fraction of agreeing labels under the best cluster-to-class matching.
double accuracy(const std::vector<int>& pred, const std::vector<int>& truth);

/// Normalized mutual information, natural logs, sqrt-entropy normalization.
/// Zero when either partition has a single cluster.
double nmi(const std::vector<int>& pred, const std::vector<int>& truth);

/// Minimum-cost assignment on a square matrix; returns the column chosen for
/// each row.
std::vector<int> hungarian(const Eigen::MatrixXd& cost);

/// Count of leading eigenvalues sitting below the widest consecutive gap,
/// scanning at most max_k nonzero eigenvalues.
int eigengap_dimension(const Eigen::VectorXd& eigenvalues, int max_k);

}  // namespace graspel
