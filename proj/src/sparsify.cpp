#include "graspel/sparsify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "graspel/rng.hpp"

namespace graspel {

namespace {

class UnionFind {
public:
    explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    int find(int x) {
        while (parent_[static_cast<std::size_t>(x)] != x) {
            parent_[static_cast<std::size_t>(x)] =
                parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
            x = parent_[static_cast<std::size_t>(x)];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[static_cast<std::size_t>(a)] = b;
        return true;
    }

private:
    std::vector<int> parent_;
};

}  // namespace

std::vector<double> approx_leverage_scores(const SparseGraph& g, const SpectralEmbedding& emb) {
    if (!emb.has_subspace()) throw std::invalid_argument("embedding subspace not built");
    if (emb.subspace.rows() != g.num_nodes())
        throw std::invalid_argument("embedding does not match graph size");
    std::vector<double> scores;
    scores.reserve(g.edges().size());
    for (const Edge& e : g.edges()) scores.push_back(e.w * embedding_distance(emb, e.u, e.v));
    return scores;
}

SparseGraph spectral_sparsify(const SparseGraph& g, const SparsifyConfig& cfg) {
    const int n = g.num_nodes();
    if (!(cfg.target_density >= static_cast<double>(n - 1) / n))
        throw std::invalid_argument("target density cannot fit a spanning tree");
    if (static_cast<double>(g.num_edges()) <= cfg.target_density * n) return g;

    const std::int64_t target = std::llround(cfg.target_density * n);
    const ComponentInfo comps = connected_components(g);
    const std::int64_t forest_size = n - comps.count;
    if (target < forest_size)
        throw std::invalid_argument("target density below the spanning forest size");

    const int r = cfg.r > 0 ? std::min(cfg.r, n) : std::min(50, n);
    EigsOptions eopts;
    eopts.seed = cfg.seed;
    const SpectralEmbedding emb =
        build_subspace(smallest_eigenpairs(build_laplacian(g), r, eopts), cfg.sigma);
    const std::vector<double> scores = approx_leverage_scores(g, emb);

    // Maximum-score spanning forest keeps connectivity.
    const auto& edges = g.edges();
    std::vector<int> idx(edges.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        const double sa = scores[static_cast<std::size_t>(a)];
        const double sb = scores[static_cast<std::size_t>(b)];
        if (sa != sb) return sa > sb;
        const Edge& ea = edges[static_cast<std::size_t>(a)];
        const Edge& eb = edges[static_cast<std::size_t>(b)];
        return ea.u != eb.u ? ea.u < eb.u : ea.v < eb.v;
    });

    UnionFind uf(n);
    std::vector<char> in_tree(edges.size(), 0);
    std::vector<int> off_tree;
    for (int e : idx) {
        const Edge& edge = edges[static_cast<std::size_t>(e)];
        if (uf.unite(edge.u, edge.v))
            in_tree[static_cast<std::size_t>(e)] = 1;
        else
            off_tree.push_back(e);  // already ordered by descending score
    }

    SparseGraph out(n);
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (in_tree[e]) out.add_edge(edges[e].u, edges[e].v, edges[e].w);

    std::int64_t budget = target - forest_size;
    if (budget <= 0) return out;
    if (budget >= static_cast<std::int64_t>(off_tree.size())) {
        for (int e : off_tree) out.add_edge(edges[static_cast<std::size_t>(e)].u,
                                            edges[static_cast<std::size_t>(e)].v,
                                            edges[static_cast<std::size_t>(e)].w);
        return out;
    }

    // Score-proportional inclusion probabilities; edges whose probability
    // saturates are forced in and the budget redistributed.
    std::vector<int> pool = off_tree;
    std::vector<int> forced;
    std::vector<double> prob;
    while (true) {
        double total = 0.0;
        for (int e : pool) total += scores[static_cast<std::size_t>(e)];
        prob.assign(pool.size(), 0.0);
        bool saturated = false;
        if (total <= 0.0) {
            // Degenerate scores: fall back to uniform probabilities.
            for (std::size_t i = 0; i < pool.size(); ++i)
                prob[i] = static_cast<double>(budget) / static_cast<double>(pool.size());
        } else {
            for (std::size_t i = 0; i < pool.size(); ++i)
                prob[i] = static_cast<double>(budget) * scores[static_cast<std::size_t>(pool[i])] / total;
        }
        std::vector<int> next_pool;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            if (prob[i] >= 1.0) {
                forced.push_back(pool[i]);
                --budget;
                saturated = true;
            } else {
                next_pool.push_back(pool[i]);
            }
        }
        if (!saturated) break;
        pool = std::move(next_pool);
        if (budget <= 0 || pool.empty()) {
            pool.clear();
            prob.clear();
            break;
        }
    }

    for (int e : forced)
        out.add_edge(edges[static_cast<std::size_t>(e)].u, edges[static_cast<std::size_t>(e)].v,
                     edges[static_cast<std::size_t>(e)].w);

    if (budget > 0 && !pool.empty()) {
        // Systematic proportional sampling: exactly `budget` picks, inclusion
        // probability prob[i] per edge.
        Rng rng(mix_seed(cfg.seed, 0x5a135ull));
        const double start = rng.uniform();
        double cum = 0.0;
        std::int64_t next_tick = 0;
        for (std::size_t i = 0; i < pool.size() && next_tick < budget; ++i) {
            cum += prob[i];
            if (start + static_cast<double>(next_tick) < cum) {
                const Edge& edge = edges[static_cast<std::size_t>(pool[i])];
                out.add_edge(edge.u, edge.v, edge.w / prob[i]);
                ++next_tick;
            }
        }
    }
    return out;
}

}  // namespace graspel
