#pragma once

#include <cstdint>
#include <functional>

#include <Eigen/Dense>

#include "wqed/errors.hpp"

namespace wqed {

struct LanczosOptions {
    int max_iter = 5000;       // total matvec budget across restarts
    double tol = 1e-10;        // residual tolerance, relative to |T| scale
    std::uint64_t seed = 0xC0FFEE;
    int max_restarts = 8;      // deflated restarts to resolve multiplicities
};

struct LanczosResult {
    Eigen::VectorXd eigenvalues; // ascending
    Eigen::MatrixXd eigenvectors;
    int iterations = 0;
    double max_residual = 0.0;
};

/// Lowest k eigenpairs of a real symmetric operator given by its matvec,
/// using Lanczos with full reorthogonalization. Degenerate levels are
/// resolved by deflated restarts. Throws NoConvergence when the iteration
/// budget runs out, reporting the residual reached.
LanczosResult lanczos_lowest(
    const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& matvec,
    std::size_t dim, int k, const LanczosOptions& options = {});

} // namespace wqed
