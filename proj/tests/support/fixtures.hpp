#pragma once

// Synthetic data and graph fixtures shared by the test suites.

#include <Eigen/Core>
#include <cmath>
#include <utility>
#include <vector>

#include "graspel/graph.hpp"
#include "graspel/rng.hpp"

namespace fixtures {

/// Two interleaved half-circle arcs with evenly spaced arc samples and
/// Gaussian jitter. Returns (points, arc labels).
inline std::pair<Eigen::MatrixXd, std::vector<int>> two_moons(int n, double noise,
                                                              std::uint64_t seed) {
    graspel::Rng rng(seed);
    const int n1 = n / 2;
    const int n2 = n - n1;
    Eigen::MatrixXd points(n, 2);
    std::vector<int> labels(static_cast<std::size_t>(n));
    constexpr double pi = 3.14159265358979323846;
    for (int i = 0; i < n1; ++i) {
        const double t = pi * i / (n1 - 1);
        points(i, 0) = std::cos(t) + noise * rng.normal();
        points(i, 1) = std::sin(t) + noise * rng.normal();
        labels[static_cast<std::size_t>(i)] = 0;
    }
    for (int i = 0; i < n2; ++i) {
        const double t = pi * i / (n2 - 1);
        points(n1 + i, 0) = 1.0 - std::cos(t) + noise * rng.normal();
        points(n1 + i, 1) = 0.5 - std::sin(t) + noise * rng.normal();
        labels[static_cast<std::size_t>(n1 + i)] = 1;
    }
    return {std::move(points), std::move(labels)};
}

/// k Gaussian blobs in `dim` dimensions around scaled axis-unit centers.
/// Returns (points, blob labels).
inline std::pair<Eigen::MatrixXd, std::vector<int>> gaussian_blobs(int per_blob, int k, int dim,
                                                                   double spread, double sd,
                                                                   std::uint64_t seed) {
    graspel::Rng rng(seed);
    const int n = per_blob * k;
    Eigen::MatrixXd points = Eigen::MatrixXd::Zero(n, dim);
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (int b = 0; b < k; ++b) {
        for (int i = 0; i < per_blob; ++i) {
            const int row = b * per_blob + i;
            for (int d = 0; d < dim; ++d) points(row, d) = sd * rng.normal();
            points(row, b % dim) += spread;
            labels[static_cast<std::size_t>(row)] = b;
        }
    }
    return {std::move(points), std::move(labels)};
}

/// Connected random graph: a random spanning tree plus extra random edges,
/// weights uniform in [0.5, 2].
inline graspel::SparseGraph random_connected_graph(int n, double extra_per_node,
                                                   std::uint64_t seed) {
    graspel::Rng rng(seed);
    graspel::SparseGraph g(n);
    for (int v = 1; v < n; ++v) {
        const int u = static_cast<int>(rng.integer(static_cast<std::uint64_t>(v)));
        g.add_edge(u, v, 0.5 + 1.5 * rng.uniform());
    }
    const int extra = static_cast<int>(extra_per_node * n);
    int added = 0;
    int guard = 0;
    while (added < extra && guard++ < 100 * extra) {
        const int u = static_cast<int>(rng.integer(static_cast<std::uint64_t>(n)));
        const int v = static_cast<int>(rng.integer(static_cast<std::uint64_t>(n)));
        if (u == v || g.has_edge(u, v)) continue;
        g.add_edge(u, v, 0.5 + 1.5 * rng.uniform());
        ++added;
    }
    return g;
}

/// First non-edge pair of a graph, scanning in index order.
inline std::pair<int, int> first_non_edge(const graspel::SparseGraph& g) {
    for (int u = 0; u < g.num_nodes(); ++u)
        for (int v = u + 1; v < g.num_nodes(); ++v)
            if (!g.has_edge(u, v)) return {u, v};
    return {-1, -1};
}

/// Random data matrix with standard normal entries.
inline Eigen::MatrixXd random_data(int n, int m, std::uint64_t seed) {
    graspel::Rng rng(seed);
    Eigen::MatrixXd X(n, m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) X(i, j) = rng.normal();
    return X;
}

}  // namespace fixtures
