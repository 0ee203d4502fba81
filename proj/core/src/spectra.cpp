#include "wqed/spectra.hpp"

#include <cmath>

#include "wqed/dense_eigen.hpp"
#include "wqed/sweep.hpp"

namespace wqed {

GroundStateResult ground_states(const SectorHamiltonian& h, int k,
                                const SolverOptions& options) {
    const std::size_t dim = h.dim();
    if (k < 1) throw InvalidParameter("k must be at least 1");
    const int k_eff = static_cast<int>(std::min<std::size_t>(k, dim));

    GroundStateResult result;
    result.n_spins = h.basis()->n_spins();
    result.n_up = h.basis()->n_up();

    if (dim <= options.dense_threshold || !h.is_real()) {
        if (h.is_real()) {
            const auto solved = dense_eigensolve(h.dense_real());
            result.eigenvalues = solved.values.head(k_eff);
            result.eigenvectors =
                solved.vectors.leftCols(k_eff).cast<Complex>();
        } else {
            if (dim > options.dense_threshold)
                throw DimensionOverflow(
                    "complex sector too large for the dense solver");
            const auto solved = dense_eigensolve(h.dense());
            result.eigenvalues = solved.values.head(k_eff);
            result.eigenvectors = solved.vectors.leftCols(k_eff);
        }
    } else {
        LanczosOptions lopt;
        lopt.max_iter = options.max_iter;
        lopt.tol = options.tol;
        lopt.seed = options.seed;
        auto run = lanczos_lowest(
            [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { h.matvec(x, y); },
            dim, k_eff, lopt);
        result.eigenvalues = run.eigenvalues;
        result.eigenvectors = run.eigenvectors.cast<Complex>();
        result.max_residual = run.max_residual;
    }

    const double e0 = result.eigenvalues(0);
    const double scale = std::max(1.0, std::abs(e0));
    result.degeneracy = 1;
    for (int i = 1; i < k_eff; ++i) {
        const double split = result.eigenvalues(i) - e0;
        if (split <= options.degeneracy_rtol * scale) ++result.degeneracy;
        else {
            result.near_degenerate = split <= options.near_degeneracy_rtol * scale;
            break;
        }
    }
    return result;
}

double excitation_gap(const SectorHamiltonian& h, const SolverOptions& options) {
    if (h.dim() < 2) throw InvalidParameter("sector dimension below 2");
    // Ask for enough levels to step over a degenerate multiplet.
    int k = static_cast<int>(std::min<std::size_t>(6, h.dim()));
    for (;;) {
        const auto gs = ground_states(h, k, options);
        if (gs.degeneracy < k)
            return gs.eigenvalues(gs.degeneracy) - gs.eigenvalues(0);
        if (static_cast<std::size_t>(k) == h.dim())
            throw NoConvergence("whole sector is degenerate; no gap to report");
        k = static_cast<int>(std::min<std::size_t>(2 * k, h.dim()));
    }
}

Eigen::VectorXd sector_ground_energies(const CouplingMatrix& cm,
                                       Anisotropy anisotropy,
                                       const SolverOptions& options) {
    const int n = cm.n_spins;
    Eigen::VectorXd energies(n + 1);
    parallel_for(
        n + 1,
        [&](std::size_t n_up) {
            auto basis = std::make_shared<const SectorBasis>(
                static_cast<int>(n), static_cast<int>(n_up));
            const auto h = build_sector_hamiltonian(cm, basis, anisotropy);
            energies(n_up) = ground_states(h, 1, options).eigenvalues(0);
        },
        options.workers);
    return energies;
}

std::pair<int, bool> ground_magnetization(const Eigen::VectorXd& sector_energies,
                                          int n_spins, double mu) {
    int best_n_up = 0;
    double best = sector_energies(0) - mu * (0 - n_spins / 2);
    bool tie = false;
    const double tol = 1e-12 * std::max(1.0, std::abs(best));
    for (int n_up = 1; n_up <= n_spins; ++n_up) {
        const int m = n_up - n_spins / 2;
        const double e = sector_energies(n_up) - mu * m;
        if (e < best - tol) {
            best = e;
            best_n_up = n_up;
            tie = false;
        } else if (e <= best + tol) {
            // Tie resolves toward larger m; n_up increases, so take it.
            best = std::min(best, e);
            best_n_up = n_up;
            tie = true;
        }
    }
    return {best_n_up - n_spins / 2, tie};
}

double cross_sector_gap(const Eigen::VectorXd& sector_energies, int n_spins,
                        int n_up, double mu) {
    const double ref =
        sector_energies(n_up) - mu * (n_up - n_spins / 2);
    double best = std::numeric_limits<double>::infinity();
    for (int other = 0; other <= n_spins; ++other) {
        if (other == n_up) continue;
        best = std::min(best,
                        sector_energies(other) - mu * (other - n_spins / 2));
    }
    return best - ref;
}

PhaseDiagramGrid magnetization_phase_diagram(const CouplingMatrix& cm,
                                             const std::vector<double>& theta_grid,
                                             const std::vector<double>& mu_grid,
                                             const SolverOptions& options) {
    if (theta_grid.empty() || mu_grid.empty())
        throw InvalidParameter("empty grid");
    const int n = cm.n_spins;
    PhaseDiagramGrid grid;
    grid.n_spins = n;
    grid.theta = theta_grid;
    grid.mu = mu_grid;
    grid.m_star.resize(theta_grid.size(), mu_grid.size());
    grid.tie.resize(theta_grid.size(), mu_grid.size());
    grid.sector_energies.resize(theta_grid.size(), n + 1);

    // One task per (theta, sector); the mu axis is a closed-form shift.
    const std::size_t n_sectors = n + 1;
    parallel_for(
        theta_grid.size() * n_sectors,
        [&](std::size_t task) {
            const std::size_t t = task / n_sectors;
            const int n_up = static_cast<int>(task % n_sectors);
            auto basis = std::make_shared<const SectorBasis>(n, n_up);
            const auto h = build_sector_hamiltonian(cm, basis, theta_grid[t]);
            grid.sector_energies(t, n_up) =
                ground_states(h, 1, options).eigenvalues(0);
        },
        options.workers);

    for (std::size_t t = 0; t < theta_grid.size(); ++t) {
        const Eigen::VectorXd energies = grid.sector_energies.row(t);
        for (std::size_t u = 0; u < mu_grid.size(); ++u) {
            const auto [m, tie] = ground_magnetization(energies, n, mu_grid[u]);
            grid.m_star(t, u) = m;
            grid.tie(t, u) = tie;
        }
    }
    return grid;
}

PhaseDiagramGrid magnetization_phase_diagram(const EffectiveCouplings& c,
                                             int n_spins, Boundary boundary,
                                             const std::vector<double>& theta_grid,
                                             const std::vector<double>& mu_grid,
                                             const SolverOptions& options) {
    return magnetization_phase_diagram(
        build_coupling_matrix(c, n_spins, boundary), theta_grid, mu_grid,
        options);
}

MagnetizationCurve magnetization_curve(const CouplingMatrix& cm, double theta,
                                       const std::vector<double>& mu_grid,
                                       const SolverOptions& options) {
    if (mu_grid.empty()) throw InvalidParameter("empty mu grid");
    const auto energies =
        sector_ground_energies(cm, Anisotropy::from_angle(theta), options);
    MagnetizationCurve curve;
    curve.mu = mu_grid;
    curve.m.reserve(mu_grid.size());
    for (const double mu : mu_grid) {
        const int m = ground_magnetization(energies, cm.n_spins, mu).first;
        curve.m.push_back(m);
        if (!curve.saturation_mu && m == cm.n_spins / 2) curve.saturation_mu = mu;
    }
    return curve;
}

} // namespace wqed
