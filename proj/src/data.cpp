#include "graspel/data.hpp"

#include <cmath>
#include <stdexcept>

namespace graspel {

DataMatrix::DataMatrix(Eigen::MatrixXd values, bool centered)
    : values_(std::move(values)), centered_(centered) {
    if (values_.rows() < 1 || values_.cols() < 1)
        throw std::invalid_argument("data matrix must be non-empty");
    if (centered_) {
        const double tol = 1e-8 * static_cast<double>(values_.cols());
        for (int i = 0; i < values_.rows(); ++i) {
            if (std::abs(values_.row(i).sum()) > tol)
                throw std::invalid_argument("data marked centered but a row mean is nonzero");
        }
    }
}

DataMatrix center_rows(const DataMatrix& X) {
    Eigen::MatrixXd v = X.values();
    v.colwise() -= v.rowwise().mean();
    return DataMatrix(std::move(v), true);
}

double data_distance(const DataMatrix& X, int p, int q) {
    const int n = X.num_points();
    if (p < 0 || q < 0 || p >= n || q >= n) throw std::invalid_argument("point index out of range");
    return (X.values().row(p) - X.values().row(q)).squaredNorm() / X.num_features();
}

double smoothness(const LaplacianMatrix& L, const DataMatrix& X) {
    if (X.num_points() != L.size())
        throw std::invalid_argument("data row count does not match Laplacian size");
    return (L.matrix() * X.values()).cwiseProduct(X.values()).sum();
}

}  // namespace graspel
