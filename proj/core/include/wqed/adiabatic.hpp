#pragma once

#include <functional>
#include <vector>

#include "wqed/fullspace.hpp"
#include "wqed/spectra.hpp"

namespace wqed {

/// Interpolation path (a(s), b(s)) on s in [0, 1] weighting the ZZ and
/// exchange parts; both must stay in [-1, 1].
struct AdiabaticPath {
    std::function<double(double)> a, b;
};

/// a(s) = 1, b(s) = s: start from the classical ZZ model, ramp in exchange.
AdiabaticPath simple_z_then_xy();

/// Arbitrary path; bounds are validated on a dense sample.
AdiabaticPath custom_path(std::function<double(double)> a,
                          std::function<double(double)> b);

enum class ScheduleKind { Uniform, HS, MinMatrixElement };

/// Monotone reparametrization s(t) on [0, T] built from per-node gap data.
struct Schedule {
    AdiabaticPath path;
    ScheduleKind kind = ScheduleKind::Uniform;
    double total_time = 1.0;
    std::vector<double> s_nodes, t_nodes, gap;
    double s_of_t(double t) const;
    double min_gap() const;
};

/// Per-node ED along the path: Uniform gives s(t) = t/T; HS weights the
/// sweep rate by gap^2 over the Hilbert-Schmidt norm of dH/ds;
/// MinMatrixElement by min_n gap_n^2 / |<phi_n|dH/ds|phi_0>|.
Schedule schedule_from_gap(const SectorHamiltonian& h,
                           const AdiabaticPath& path, ScheduleKind kind,
                           double total_time, int n_excited = 10,
                           int n_nodes = 200,
                           const SolverOptions& solver = {});

struct EvolutionResult {
    Eigen::VectorXcd final_state;
    double fidelity = 0.0;   // squared overlap with the target ground space
    double infidelity = 1.0;
    double norm_drift = 0.0; // | ||psi(T)|| - expected norm |
    long steps = 0, rejected = 0;
    bool degenerate_target = false;
    bool initial_tie = false;
};

/// Integrates d psi/dt = -i H(s(t)) psi - (gamma/2) n_up psi with an
/// adaptive embedded Runge-Kutta pair, starting from the lowest-energy
/// classical configuration of the sector. No renormalization is applied;
/// norm drift is a diagnostic. Optional per-site fields are ramped off
/// linearly over s in [0.8, 1].
EvolutionResult evolve_pure(const SectorHamiltonian& h, const Schedule& sched,
                            double decay_rate = 0.0, double tol = 1e-9,
                            const Eigen::VectorXd* local_fields = nullptr);

enum class LossMethod { Analytic, NoJump, FullLindblad };

/// Fidelity with excitation loss at rate gamma: the analytic relation
/// F_gamma = exp(-gamma n_up T) F, the no-jump non-Hermitian evolution, or
/// the full master equation on the 2^N density matrix (N <= 6).
double lossy_fidelity(const CouplingMatrix& cm, int n_up,
                      const Schedule& sched, double gamma, LossMethod method,
                      double tol = 1e-9);

} // namespace wqed
