#pragma once

#include <optional>
#include <vector>

#include "wqed/lanczos.hpp"
#include "wqed/sector_hamiltonian.hpp"

namespace wqed {

struct SolverOptions {
    std::size_t dense_threshold = 2000; // dense solve at or below this dimension
    int max_iter = 5000;
    double tol = 1e-10;
    std::uint64_t seed = 0xC0FFEE;
    double degeneracy_rtol = 1e-8;
    double near_degeneracy_rtol = 1e-5;
    int workers = 0; // 0: WQED_WORKERS env or hardware
};

/// Lowest eigenpairs of one magnetization sector at mu = 0, energies in
/// units of jtilde.
struct GroundStateResult {
    int n_spins = 0;
    int n_up = 0;
    Eigen::VectorXd eigenvalues; // ascending
    Eigen::MatrixXcd eigenvectors;
    int degeneracy = 1;            // levels within degeneracy_rtol of the minimum
    bool near_degenerate = false;  // splitting in (degeneracy_rtol, near_degeneracy_rtol]
    double max_residual = 0.0;
};

GroundStateResult ground_states(const SectorHamiltonian& h, int k,
                                const SolverOptions& options = {});

/// E1 - E0 within the sector; a degenerate ground multiplet is skipped and
/// the gap is measured to the first level outside the tolerance.
double excitation_gap(const SectorHamiltonian& h,
                      const SolverOptions& options = {});

/// Ground energies E0(n_up) at mu = 0 for every sector n_up = 0..N.
/// Sectors are solved concurrently.
Eigen::VectorXd sector_ground_energies(const CouplingMatrix& cm,
                                       Anisotropy anisotropy,
                                       const SolverOptions& options = {});

/// Gap from sector n_up to the best other sector at chemical potential mu:
/// min_{m' != m} [E0(m') - mu m'] - [E0(m) - mu m].
double cross_sector_gap(const Eigen::VectorXd& sector_energies, int n_spins,
                        int n_up, double mu);

struct PhaseDiagramGrid {
    int n_spins = 0;
    std::vector<double> theta;
    std::vector<double> mu;
    Eigen::MatrixXi m_star;                  // theta x mu
    Eigen::Matrix<bool, -1, -1> tie;         // argmin tie at this grid point
    Eigen::MatrixXd sector_energies;         // theta x (N + 1), E0 at mu = 0
};

/// Ground magnetization over a (theta, mu) grid. Each theta column needs one
/// diagonalization per sector; the mu dependence is the exact linear shift.
/// Argmin ties resolve toward larger m and are flagged.
PhaseDiagramGrid magnetization_phase_diagram(const EffectiveCouplings& c,
                                             int n_spins, Boundary boundary,
                                             const std::vector<double>& theta_grid,
                                             const std::vector<double>& mu_grid,
                                             const SolverOptions& options = {});

/// Same, starting from an explicit coupling matrix.
PhaseDiagramGrid magnetization_phase_diagram(const CouplingMatrix& cm,
                                             const std::vector<double>& theta_grid,
                                             const std::vector<double>& mu_grid,
                                             const SolverOptions& options = {});

struct MagnetizationCurve {
    std::vector<double> mu;
    std::vector<int> m;
    std::optional<double> saturation_mu; // smallest grid mu with m = N/2
};

MagnetizationCurve magnetization_curve(const CouplingMatrix& cm, double theta,
                                       const std::vector<double>& mu_grid,
                                       const SolverOptions& options = {});

/// Argmin over m of E0(m) - mu m; ties toward larger m.
std::pair<int, bool> ground_magnetization(const Eigen::VectorXd& sector_energies,
                                          int n_spins, double mu);

} // namespace wqed
