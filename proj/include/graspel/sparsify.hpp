#pragma once

#include <cstdint>
#include <vector>

#include "graspel/graph.hpp"
#include "graspel/spectral.hpp"

namespace graspel {

struct SparsifyConfig {
    double target_density = 1.2;  // |E|/|V| to aim for
    int r = 0;                    // eigenpairs for the resistance proxy; 0 = min(50, n)
    double sigma = 1e9;           // large sigma puts the embedding in the resistance regime
    std::uint64_t seed = 0;
};

/// w_e times the embedding distance of each existing edge, aligned with
/// g.edges(). With r = n and large sigma this is the exact leverage score.
std::vector<double> approx_leverage_scores(const SparseGraph& g, const SpectralEmbedding& emb);

/// Keep a maximum-score spanning forest, then fill the remaining budget by
/// sampling off-tree edges proportionally to their leverage scores (without
/// replacement); kept off-tree edges are reweighted by 1/p_e so quadratic
/// forms stay unbiased.
SparseGraph spectral_sparsify(const SparseGraph& g, const SparsifyConfig& cfg);

}  // namespace graspel
