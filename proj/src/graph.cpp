#include "graspel/graph.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "graspel/errors.hpp"

namespace graspel {

SparseGraph::SparseGraph(int n) : n_(n) {
    if (n <= 0) throw std::invalid_argument("graph needs a positive node count");
    adj_.resize(static_cast<std::size_t>(n));
}

SparseGraph::SparseGraph(int n, const std::vector<Edge>& edges) : SparseGraph(n) {
    edges_.reserve(edges.size());
    for (const Edge& e : edges) add_edge(e.u, e.v, e.w);
}

bool SparseGraph::has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) return false;
    if (u > v) std::swap(u, v);
    return keys_.count(key(u, v)) > 0;
}

void SparseGraph::add_edge(int u, int v, double w) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
        throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loops are not allowed");
    if (!(w > 0.0) || !std::isfinite(w))
        throw std::invalid_argument("edge weight must be positive and finite");
    if (u > v) std::swap(u, v);
    if (!keys_.insert(key(u, v)).second) throw std::invalid_argument("duplicate edge");
    edges_.push_back({u, v, w});
    adj_[static_cast<std::size_t>(u)].emplace_back(v, w);
    adj_[static_cast<std::size_t>(v)].emplace_back(u, w);
}

std::vector<Edge> SparseGraph::sorted_edges() const {
    std::vector<Edge> out = edges_;
    std::sort(out.begin(), out.end(),
              [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
    return out;
}

double LaplacianMatrix::degree_scale() const {
    double scale = 0.0;
    for (int i = 0; i < m_.rows(); ++i) scale = std::max(scale, m_.coeff(i, i));
    return scale;
}

double zero_eigenvalue_cutoff(const LaplacianMatrix& L) {
    return 1e-8 * std::max(1.0, L.degree_scale());
}

LaplacianMatrix build_laplacian(const SparseGraph& g) {
    const int n = g.num_nodes();
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(g.edges().size() * 4);
    for (const Edge& e : g.edges()) {
        trips.emplace_back(e.u, e.v, -e.w);
        trips.emplace_back(e.v, e.u, -e.w);
        trips.emplace_back(e.u, e.u, e.w);
        trips.emplace_back(e.v, e.v, e.w);
    }
    Eigen::SparseMatrix<double> m(n, n);
    m.setFromTriplets(trips.begin(), trips.end());
    return LaplacianMatrix(std::move(m));
}

double quadratic_form(const LaplacianMatrix& L, const Eigen::VectorXd& x) {
    if (x.size() != L.size())
        throw std::invalid_argument("vector length does not match Laplacian size");
    return x.dot(L.matrix() * x);
}

ComponentInfo connected_components(const SparseGraph& g) {
    const int n = g.num_nodes();
    ComponentInfo info;
    info.labels.assign(static_cast<std::size_t>(n), -1);
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
        if (info.labels[static_cast<std::size_t>(s)] != -1) continue;
        const int label = info.count++;
        info.labels[static_cast<std::size_t>(s)] = label;
        stack.push_back(s);
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (const auto& [v, w] : g.adjacency()[static_cast<std::size_t>(u)]) {
                (void)w;
                if (info.labels[static_cast<std::size_t>(v)] == -1) {
                    info.labels[static_cast<std::size_t>(v)] = label;
                    stack.push_back(v);
                }
            }
        }
    }
    return info;
}

double effective_resistance_exact(const SparseGraph& g, int p, int q) {
    const int n = g.num_nodes();
    if (p < 0 || q < 0 || p >= n || q >= n) throw std::invalid_argument("node index out of range");
    if (p == q) return 0.0;
    const ComponentInfo comps = connected_components(g);
    if (comps.labels[static_cast<std::size_t>(p)] != comps.labels[static_cast<std::size_t>(q)])
        throw DisconnectedError("effective resistance is infinite across components");

    const LaplacianMatrix L = build_laplacian(g);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L.dense());
    const Eigen::VectorXd& vals = es.eigenvalues();
    const Eigen::MatrixXd& vecs = es.eigenvectors();
    const double cut = zero_eigenvalue_cutoff(L);
    double resistance = 0.0;
    for (int i = 0; i < n; ++i) {
        if (vals(i) <= cut) continue;
        const double d = vecs(p, i) - vecs(q, i);
        resistance += d * d / vals(i);
    }
    return resistance;
}

}  // namespace graspel
