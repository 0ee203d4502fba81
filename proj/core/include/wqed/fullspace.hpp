#pragma once

#include <Eigen/Dense>

#include "wqed/sector_hamiltonian.hpp"

namespace wqed {

/// Dense operators on the full 2^N space, for small-N master-equation
/// checks. Configurations are bit patterns (site 0 = least significant bit).
struct FullSpaceParts {
    int n_spins = 0;
    Eigen::VectorXd hz;   // diagonal of the ZZ part
    Eigen::MatrixXd hxy;  // exchange part
};

/// ZZ and exchange parts of the spin Hamiltonian; the assembled operator is
/// a diag(hz) + b hxy, in units of jtilde. Guarded to N <= 14.
FullSpaceParts fullspace_parts(const CouplingMatrix& cm);

Eigen::MatrixXd fullspace_hamiltonian(const FullSpaceParts& parts, double a,
                                      double b);

/// S^-_site as a dense 2^N matrix.
Eigen::MatrixXd lowering_operator(int n_spins, int site);

/// Diagonal of the excitation-number operator sum_j S^+_j S^-_j.
Eigen::VectorXd excitation_counts(int n_spins);

} // namespace wqed
