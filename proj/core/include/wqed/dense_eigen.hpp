#pragma once

#include <Eigen/Dense>

namespace wqed {

/// Full eigendecomposition of a self-adjoint matrix, eigenvalues ascending.
/// Eigen's QL iteration can stall on spectra with large degenerate
/// multiplets (collective-spin sectors); on failure the problem is retried
/// under a random orthogonal similarity, which leaves the spectrum intact
/// but unsticks the iteration. Throws NoConvergence if the retry fails too.
struct DenseEigenReal {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
};
struct DenseEigenComplex {
    Eigen::VectorXd values;
    Eigen::MatrixXcd vectors;
};

DenseEigenReal dense_eigensolve(const Eigen::MatrixXd& a);
DenseEigenComplex dense_eigensolve(const Eigen::MatrixXcd& a);

} // namespace wqed
