#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graspel/data.hpp"
#include "graspel/graph.hpp"
#include "graspel/spectral.hpp"

namespace graspel {

struct LearnConfig {
    int k_init = 2;        // neighbors in the initial kNN graph
    double sigma = 1e3;    // prior feature std
    double tol = 10.0;     // distortion tolerance for termination
    double eps = 0.05;     // window fraction of the Fiedler ordering
    double zeta = 0.001;   // per-iteration edge budget fraction
    int max_iter = 50;
    int r = 2;                      // eigenpairs in the embedding (2 = Fiedler only)
    std::int64_t sample_budget = 0; // candidate pairs per iteration; 0 means 10*n
    std::uint64_t seed = 0;
    double beta = 0.0;              // only used by the objective monitor
    bool track_objective = false;
    int objective_r_trunc = 50;
    int eig_max_subspace = 0;           // forwarded to the eigensolver; 0 = automatic
    bool eig_allow_dense_rescue = true; // forwarded to the eigensolver

    void validate() const;  // throws std::invalid_argument
};

struct IterationRecord {
    int iter = 0;
    double max_distortion = 0.0;
    int edges_added = 0;
    int components = 0;
    std::optional<double> objective;
};

struct LearnTrace {
    std::vector<IterationRecord> iterations;
    bool converged = false;
    bool aborted = false;  // eigensolver failure mid-run
    std::string abort_reason;
};

struct LearnResult {
    SparseGraph graph;
    LearnTrace trace;
};

/// Union of each point's k nearest neighbors (Euclidean), weighted by the
/// reciprocal feature-averaged squared distance.
SparseGraph initial_knn_graph(const DataMatrix& X, int k);

/// Nodes sorted ascending by their Fiedler-vector entry (ties by index).
std::vector<int> fiedler_order(const SparseGraph& g, std::uint64_t seed);

/// Candidate pairs connecting the top and bottom eps-windows of the sorted
/// node order, excluding existing edges and self-pairs. When the window
/// product is within budget the full set is returned; otherwise pairs are
/// sampled uniformly without replacement.
std::vector<std::pair<int, int>> generate_candidates(const std::vector<int>& order, double eps,
                                                     std::int64_t sample_budget,
                                                     const SparseGraph& g, std::uint64_t seed);

/// The spectral densification loop: embed, score candidate distortions, add
/// the worst offenders, stop once every sampled candidate is within
/// tolerance.
LearnResult graspel_learn(const DataMatrix& X, const LearnConfig& cfg);

struct StabilityReport {
    double max_distortion = 0.0;
    Eigen::VectorXd eigenvalues;  // leading r_trunc eigenvalues, ascending
};

/// Post-hoc convergence check over a fresh candidate sample.
StabilityReport stability_report(const SparseGraph& g, const DataMatrix& X,
                                 const LearnConfig& cfg);

}  // namespace graspel
