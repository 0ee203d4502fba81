#include "wqed/dense_eigen.hpp"

#include <random>

#include "wqed/errors.hpp"

namespace wqed {

namespace {

Eigen::MatrixXd random_orthogonal(Eigen::Index n) {
    std::mt19937_64 rng(0x9E3779B97F4A7C15ull ^ static_cast<std::uint64_t>(n));
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd g(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) g(i, j) = gauss(rng);
    return Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ();
}

template <typename Matrix, typename Result>
Result solve(const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
    if (solver.info() == Eigen::Success)
        return {solver.eigenvalues(), solver.eigenvectors()};

    const Matrix q = random_orthogonal(a.rows())
                         .template cast<typename Matrix::Scalar>();
    const Matrix rotated = q.adjoint() * a * q;
    Eigen::SelfAdjointEigenSolver<Matrix> retry(rotated);
    if (retry.info() != Eigen::Success)
        throw NoConvergence("dense eigensolver failed to converge");
    return {retry.eigenvalues(), q * retry.eigenvectors()};
}

} // namespace

DenseEigenReal dense_eigensolve(const Eigen::MatrixXd& a) {
    return solve<Eigen::MatrixXd, DenseEigenReal>(a);
}

DenseEigenComplex dense_eigensolve(const Eigen::MatrixXcd& a) {
    return solve<Eigen::MatrixXcd, DenseEigenComplex>(a);
}

} // namespace wqed
