#pragma once

#include <map>

#include <Eigen/Dense>

#include "wqed/couplings.hpp"
#include "wqed/errors.hpp"

namespace wqed {

/// Thermodynamic-limit ground state of the dimerized XX chain (exchange
/// amplitude alternating between (1 + delta_eff) and (1 - delta_eff)) at
/// chemical potential mu >= 0, in units of jtilde. Solved through the
/// Jordan-Wigner mapping to free fermions.
class FreeFermionSolution {
public:
    FreeFermionSolution(double delta_eff, double mu);

    double delta_eff() const { return delta_; }
    double mu() const { return mu_; }
    double fermi_point() const { return k0_; }
    double m_per_spin() const { return (M_PI - k0_) / (2.0 * M_PI); }

    /// Band energies +/- (1/2) sqrt(2(1+d^2) + 2(1-d^2) cos k) - mu.
    double dispersion_upper(double k) const;
    double dispersion_lower(double k) const;
    /// phi_k = arg((1 + d) + (1 - d) e^{-ik}).
    double phase(double k) const;

    /// Contraction kernels in unit-cell distance.
    double g(int r) const; // closed form
    double f(int r) const; // adaptive quadrature, cached

    /// <B_p A_q> for single-site indices (site 2i is the a mode of cell i).
    double contraction(int p, int q) const;

    /// Spin correlators between single-site indices i != j.
    double zz(int i, int j) const;
    double xx(int i, int j) const;

    /// Dimer order parameter O_2 = [F_0^2 - F_1^2 + 2(F_1 - F_0)]/8.
    double dimer_order() const;

private:
    double delta_ = 0.0, mu_ = 0.0, k0_ = 0.0;
    mutable std::map<int, double> f_cache_;
};

FreeFermionSolution dimerized_xx_thermo(double delta_eff, double mu);

/// Finite open dimerized XX chain: exact single-particle diagonalization of
/// the hopping matrix, sector energies and Wick-contraction correlators.
class FiniteFreeFermion {
public:
    FiniteFreeFermion(int n_sites, double delta_eff);

    int n_sites() const { return n_; }
    double delta_eff() const { return delta_; }
    const Eigen::VectorXd& levels() const { return levels_; }
    const Eigen::MatrixXd& orbitals() const { return orbitals_; }

    /// Ground energy of the fixed-particle-number sector at mu = 0:
    /// the sum of the n_up lowest single-particle levels.
    double sector_energy(int n_up) const;

    /// Particle number minimizing E(n_up) - mu (n_up - N/2).
    int ground_n_up(double mu) const;

    /// C_pq = sum over the n_up lowest orbitals of phi_l(p) phi_l(q).
    Eigen::MatrixXd correlation_matrix(int n_up) const;

    double zz(const Eigen::MatrixXd& corr, int i, int j) const;
    double xx(const Eigen::MatrixXd& corr, int i, int j) const;

private:
    int n_ = 0;
    double delta_ = 0.0;
    Eigen::VectorXd levels_;
    Eigen::MatrixXd orbitals_;
};

FiniteFreeFermion dimerized_xx_finite(int n_sites, double delta_eff,
                                      Boundary boundary = Boundary::OBC);

} // namespace wqed
