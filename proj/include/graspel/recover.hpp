#pragma once

#include <cstdint>
#include <vector>

#include "graspel/data.hpp"
#include "graspel/graph.hpp"
#include "graspel/learn.hpp"

namespace graspel {

/// Random geometric graph: coordinates uniform in the unit square, Gaussian
/// kernel weights exp(-d^2 / (2 theta^2)), edges kept where the weight
/// reaches kappa.
SparseGraph gen_gaussian_graph(int n, double theta, double kappa, std::uint64_t seed);

/// Erdos-Renyi graph with unit weights.
SparseGraph gen_er_graph(int n, double p, std::uint64_t seed);

/// Columns are i.i.d. samples of the zero-mean Gaussian with covariance
/// (L + I/sigma^2)^{-1}, drawn by eigen-filtering white noise. Dense;
/// limited to 512 nodes.
DataMatrix sample_smooth_signals(const LaplacianMatrix& L, double sigma, int m,
                                 std::uint64_t seed);

struct RecoveryReport {
    double precision = 0.0;
    double recall = 0.0;
    double f_measure = 0.0;
    double nmi_edges = 0.0;
    std::int64_t true_edges = 0;
    std::int64_t learned_edges = 0;
    std::int64_t common_edges = 0;
};

/// Edge-presence agreement between a learned and a ground-truth graph;
/// weights are ignored.
RecoveryReport edge_set_metrics(const SparseGraph& learned, const SparseGraph& truth);

enum class TruthKind { kGaussian, kEr };

struct RecoverySetup {
    TruthKind kind = TruthKind::kGaussian;
    int n = 50;
    int m = 1000;          // signal count
    double theta = 0.5;    // Gaussian kernel width
    double kappa = 0.75;   // Gaussian weight threshold
    double edge_prob = 0.05;
    double signal_sigma = 1e3;
    int trials = 20;
};

/// One generate / sample / learn / score round.
RecoveryReport recovery_trial(const RecoverySetup& setup, const LearnConfig& cfg,
                              std::uint64_t seed);

struct RecoveryAggregate {
    std::vector<RecoveryReport> trials;
    RecoveryReport mean;
    RecoveryReport stddev;  // sample standard deviation
};

RecoveryAggregate recovery_experiment(const RecoverySetup& setup, const LearnConfig& cfg,
                                      std::uint64_t seed);

}  // namespace graspel
