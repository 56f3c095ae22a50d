#pragma once

#include <Eigen/Core>

#include "graspel/graph.hpp"

namespace graspel {

/// Floor applied to squared data distances before taking reciprocals, so
/// coincident data points do not produce infinite weights or distortions.
constexpr double kDataDistanceFloor = 1e-12;

/// N x M matrix of N data points with M features; each column doubles as a
/// signal on an N-node graph.
class DataMatrix {
public:
    explicit DataMatrix(Eigen::MatrixXd values, bool centered = false);

    int num_points() const { return static_cast<int>(values_.rows()); }
    int num_features() const { return static_cast<int>(values_.cols()); }
    const Eigen::MatrixXd& values() const { return values_; }
    bool centered() const { return centered_; }

private:
    Eigen::MatrixXd values_;
    bool centered_;
};

/// Subtract each row's mean. Idempotent.
DataMatrix center_rows(const DataMatrix& X);

/// Squared Euclidean distance between rows p and q, averaged over the M
/// features.
double data_distance(const DataMatrix& X, int p, int q);

/// Tr(X^T L X): the quadratic form summed over all signal columns.
double smoothness(const LaplacianMatrix& L, const DataMatrix& X);

}  // namespace graspel
