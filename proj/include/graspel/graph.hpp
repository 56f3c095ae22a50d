#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <cstdint>
#include <unordered_set>
#include <utility>
#include <vector>

namespace graspel {

struct Edge {
    int u;
    int v;
    double w;
};

/// Undirected weighted graph with canonical edge storage: u < v, no
/// self-loops, no duplicate pairs, strictly positive finite weights.
/// Mutation is append-only and keeps the adjacency index current, so
/// duplicate rejection and neighbor queries stay cheap while edges are
/// added incrementally.
class SparseGraph {
public:
    explicit SparseGraph(int n);
    SparseGraph(int n, const std::vector<Edge>& edges);

    int num_nodes() const { return n_; }
    std::int64_t num_edges() const { return static_cast<std::int64_t>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<std::vector<std::pair<int, double>>>& adjacency() const { return adj_; }

    bool has_edge(int u, int v) const;
    void add_edge(int u, int v, double w);

    double density() const { return static_cast<double>(edges_.size()) / n_; }

    /// Edges ordered by (u, v); the canonical order for file output.
    std::vector<Edge> sorted_edges() const;

private:
    std::uint64_t key(int u, int v) const {
        return static_cast<std::uint64_t>(u) * static_cast<std::uint64_t>(n_) +
               static_cast<std::uint64_t>(v);
    }

    int n_ = 0;
    std::vector<Edge> edges_;
    std::unordered_set<std::uint64_t> keys_;
    std::vector<std::vector<std::pair<int, double>>> adj_;
};

/// Graph Laplacian L = D - W, sparse symmetric. Rows sum to zero and
/// off-diagonal entries are non-positive by construction.
class LaplacianMatrix {
public:
    explicit LaplacianMatrix(Eigen::SparseMatrix<double> m) : m_(std::move(m)) {}

    int size() const { return static_cast<int>(m_.rows()); }
    const Eigen::SparseMatrix<double>& matrix() const { return m_; }
    Eigen::MatrixXd dense() const { return Eigen::MatrixXd(m_); }

    /// Largest weighted degree; the scale used for near-zero eigenvalue cuts.
    double degree_scale() const;

private:
    Eigen::SparseMatrix<double> m_;
};

LaplacianMatrix build_laplacian(const SparseGraph& g);

/// x^T L x, equal to the edge sum of w_{u,v} (x_u - x_v)^2.
double quadratic_form(const LaplacianMatrix& L, const Eigen::VectorXd& x);

struct ComponentInfo {
    int count = 0;
    std::vector<int> labels;  // in [0, count), ordered by first visit
};

ComponentInfo connected_components(const SparseGraph& g);

/// Exact effective resistance e_pq^T L^+ e_pq through a dense
/// eigendecomposition. Small-graph oracle; throws DisconnectedError when p
/// and q sit in different components.
double effective_resistance_exact(const SparseGraph& g, int p, int q);

/// Eigenvalues below 1e-8 times the degree scale count as zero.
double zero_eigenvalue_cutoff(const LaplacianMatrix& L);

}  // namespace graspel
