#pragma once

#include <Eigen/Dense>

#include "wqed/errors.hpp"

namespace wqed {

/// Collective-spin reference solvers for the uniform infinite-range models.
/// Energies are in units of jtilde; s and m are integers for even N.

struct DickeLevel {
    int s = 0;
    int m = 0;
    double energy = 0.0;
};

/// E(s, m) = (1/2){sin(theta)[s(s+1) - m^2] + cos(theta) m^2} - mu m.
double dicke_energy(int n_spins, int s, int m, double theta, double mu);

/// Global minimum of E(s, m) over all admissible (s, m).
DickeLevel dicke_ground_lbg(int n_spins, double theta, double mu);

/// Minimum over s >= |m| at fixed m.
DickeLevel dicke_ground_lbg_at_m(int n_spins, int m, double theta, double mu);

/// Constant relating the pairwise spin sum (each pair once, no self terms)
/// to the collective form: E_pairwise = E_collective + offset.
double lbg_pairwise_offset(int n_spins, double theta);
double ubg_pairwise_offset(int n_spins, double theta);

struct PairCorrelations {
    double zz = 0.0;
    double xx = 0.0; // equals yy
};

/// Distance-independent pair correlations of the uniform model: the s = N/2
/// pure state for theta < 0, the equal-weight ground mixture for theta > 0.
PairCorrelations lbg_infinite_correlations(int n_spins, int m, double theta);

struct UbgInfiniteResult {
    double energy = 0.0; // without the pairwise offset
    double s_a = 0.0, s_b = 0.0;
    Eigen::VectorXd amplitudes; // ground state over m_A (ascending)
    double m_a_min = 0.0;       // m_A of the first amplitude
    // Homogeneous single-pair correlations from the reduction formulas.
    double zz_cross = 0.0, xx_cross = 0.0;
    double zz_same = 0.0, xx_same = 0.0; // averaged over the two sublattices
    bool rule_mismatch = false; // exhaustive scan beat the closed-form rules
    bool degenerate = false;    // another (s_A, s_B) sector ties
};

/// Ground state of the two-sublattice infinite-range model in the sector
/// with total magnetization m, found by an exhaustive scan over (s_A, s_B)
/// with each block solved as a tridiagonal matrix.
UbgInfiniteResult ubg_infinite_ground(int n_spins, int m, double theta,
                                      double mu);

struct SublatticeCorrelations {
    double same_zz = 0.0, same_xx = 0.0;
    double cross_zz = 0.0, cross_xx = 0.0;
};

/// Closed-form ground-mixture correlations of the two-sublattice model for
/// theta in (-pi, -pi/2), where the ground state is degenerate. Only the
/// small-m phases that actually occur there are covered.
SublatticeCorrelations ubg_mixture_correlations(int n_spins, int m);

} // namespace wqed
