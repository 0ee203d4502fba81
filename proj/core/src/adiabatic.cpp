#include "wqed/adiabatic.hpp"

#include <algorithm>
#include <cmath>

#include "wqed/dense_eigen.hpp"
#include "wqed/sweep.hpp"

namespace wqed {

namespace {

constexpr double k_field_ramp_start = 0.8;

double field_weight(double s) {
    if (s < k_field_ramp_start) return 1.0;
    return (1.0 - s) / (1.0 - k_field_ramp_start);
}

void validate_path(const AdiabaticPath& path) {
    for (int i = 0; i <= 512; ++i) {
        const double s = i / 512.0;
        if (std::abs(path.a(s)) > 1.0 + 1e-12 ||
            std::abs(path.b(s)) > 1.0 + 1e-12)
            throw PathOutOfRange("path weights must stay within [-1, 1]");
    }
}

// Central-difference path slope, one-sided at the ends.
std::pair<double, double> path_slope(const AdiabaticPath& path, double s) {
    const double eps = 1e-6;
    const double lo = std::max(0.0, s - eps), hi = std::min(1.0, s + eps);
    return {(path.a(hi) - path.a(lo)) / (hi - lo),
            (path.b(hi) - path.b(lo)) / (hi - lo)};
}

// Field diagonal sum_j h_j s_j(c) over the sector basis.
Eigen::VectorXd field_diagonal(const SectorBasis& basis,
                               const Eigen::VectorXd& fields) {
    if (fields.size() != basis.n_spins())
        throw SizeMismatch("one field value per site required");
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const std::uint64_t c = basis.state(i);
        for (int j = 0; j < basis.n_spins(); ++j)
            diag(i) += fields(j) * ((c >> j) & 1 ? 0.5 : -0.5);
    }
    return diag;
}

// Lowest-energy classical configuration at s = 0; ties resolve to the
// lowest bit pattern (the basis is sorted ascending).
std::pair<std::size_t, bool> initial_config(const SectorHamiltonian& h,
                                            const AdiabaticPath& path,
                                            const Eigen::VectorXd* field_diag) {
    Eigen::VectorXd diag = path.a(0.0) * h.hz_diagonal();
    if (field_diag) diag += field_weight(0.0) * (*field_diag);
    std::size_t best = 0;
    bool tie = false;
    for (std::size_t i = 1; i < static_cast<std::size_t>(diag.size()); ++i) {
        if (diag(i) < diag(best) - 1e-12) {
            best = i;
            tie = false;
        } else if (diag(i) < diag(best) + 1e-12) {
            tie = true;
        }
    }
    return {best, tie};
}

// Dormand-Prince 5(4) adaptive integrator over [0, t_end]. State is any
// Eigen matrix type; Deriv fills dy from (t, y).
template <class State, class Deriv>
void integrate_rk45(State& y, double t_end, double tol, Deriv deriv,
                    long& steps, long& rejected) {
    static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                        c5 = 8.0 / 9;
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                        a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                        a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695,
                        e4 = b4 - 393.0 / 640, e5 = b5 + 92097.0 / 339200,
                        e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

    double t = 0.0, step = t_end / 100.0;
    State k1(y.rows(), y.cols()), k2 = k1, k3 = k1, k4 = k1, k5 = k1, k6 = k1,
          k7 = k1, trial = k1;
    deriv(t, y, k1);
    const long max_steps = 50'000'000;
    while (t < t_end) {
        step = std::min(step, t_end - t);
        if (step < 1e-13 * t_end)
            throw IntegratorFailure("step size underflow");
        trial = y + step * a21 * k1;
        deriv(t + c2 * step, trial, k2);
        trial = y + step * (a31 * k1 + a32 * k2);
        deriv(t + c3 * step, trial, k3);
        trial = y + step * (a41 * k1 + a42 * k2 + a43 * k3);
        deriv(t + c4 * step, trial, k4);
        trial = y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        deriv(t + c5 * step, trial, k5);
        trial = y + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 +
                            a65 * k5);
        deriv(t + step, trial, k6);
        trial = y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        deriv(t + step, trial, k7);

        const State err_vec = step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 +
                                      e6 * k6 + e7 * k7);
        const double scale = tol * (1.0 + y.cwiseAbs().maxCoeff());
        const double err = err_vec.cwiseAbs().maxCoeff() / scale;

        if (err <= 1.0) {
            t += step;
            y = trial;
            k1 = k7; // first-same-as-last
            ++steps;
        } else {
            ++rejected;
        }
        const double factor =
            std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
        step *= factor;
        if (steps + rejected > max_steps)
            throw IntegratorFailure("step budget exhausted");
    }
}

} // namespace

AdiabaticPath simple_z_then_xy() {
    return {[](double) { return 1.0; }, [](double s) { return s; }};
}

AdiabaticPath custom_path(std::function<double(double)> a,
                          std::function<double(double)> b) {
    AdiabaticPath path{std::move(a), std::move(b)};
    validate_path(path);
    return path;
}

double Schedule::s_of_t(double t) const {
    if (t <= 0.0) return s_nodes.front();
    if (t >= total_time) return s_nodes.back();
    const auto it = std::upper_bound(t_nodes.begin(), t_nodes.end(), t);
    const std::size_t i = it - t_nodes.begin();
    const double t0 = t_nodes[i - 1], t1 = t_nodes[i];
    const double w = t1 > t0 ? (t - t0) / (t1 - t0) : 0.0;
    return s_nodes[i - 1] + w * (s_nodes[i] - s_nodes[i - 1]);
}

double Schedule::min_gap() const {
    return *std::min_element(gap.begin(), gap.end());
}

Schedule schedule_from_gap(const SectorHamiltonian& h,
                           const AdiabaticPath& path, ScheduleKind kind,
                           double total_time, int n_excited, int n_nodes,
                           const SolverOptions& solver) {
    validate_path(path);
    if (total_time <= 0.0) throw InvalidParameter("total time must be positive");
    if (n_nodes < 2) throw InvalidParameter("need at least two grid nodes");

    Schedule sched;
    sched.path = path;
    sched.kind = kind;
    sched.total_time = total_time;
    sched.s_nodes.resize(n_nodes);
    sched.gap.resize(n_nodes);
    std::vector<double> rate(n_nodes, 1.0);

    const int k = static_cast<int>(
        std::min<std::size_t>(n_excited + 1, h.dim()));
    parallel_for(
        static_cast<std::size_t>(n_nodes),
        [&](std::size_t i) {
            const double s = static_cast<double>(i) / (n_nodes - 1);
            sched.s_nodes[i] = s;
            const double a = path.a(s), b = path.b(s);
            const auto solve = dense_eigensolve(h.dense_real(a, b));
            sched.gap[i] = solve.values(1) - solve.values(0);
            if (kind == ScheduleKind::Uniform) return;
            const auto [da, db] = path_slope(path, s);
            if (kind == ScheduleKind::HS) {
                const double norm = std::sqrt(h.hs_norm_squared(da, db));
                rate[i] = norm > 1e-14
                              ? sched.gap[i] * sched.gap[i] / norm
                              : 1e12;
                return;
            }
            // MinMatrixElement: dH/ds matrix elements against the ground
            // state.
            Eigen::VectorXd dh_phi0(h.dim());
            h.matvec(solve.vectors.col(0), dh_phi0, da, db);
            double best = 1e12;
            const double e0 = solve.values(0);
            for (int n = 1; n < k; ++n) {
                const double me =
                    std::abs(solve.vectors.col(n).dot(dh_phi0));
                if (me < 1e-14) continue;
                const double gap_n = solve.values(n) - e0;
                best = std::min(best, gap_n * gap_n / me);
            }
            rate[i] = best;
        },
        solver.workers);

    for (const double g : sched.gap)
        if (g < 1e-8) throw GaplessPath("gap collapsed along the path");

    // t(s) by trapezoid integration of 1/rate, normalized to total_time.
    sched.t_nodes.resize(n_nodes);
    sched.t_nodes[0] = 0.0;
    for (int i = 1; i < n_nodes; ++i) {
        const double ds = sched.s_nodes[i] - sched.s_nodes[i - 1];
        sched.t_nodes[i] = sched.t_nodes[i - 1] +
                           0.5 * ds * (1.0 / rate[i] + 1.0 / rate[i - 1]);
    }
    const double span = sched.t_nodes.back();
    for (double& t : sched.t_nodes) t *= total_time / span;
    return sched;
}

EvolutionResult evolve_pure(const SectorHamiltonian& h, const Schedule& sched,
                            double decay_rate, double tol,
                            const Eigen::VectorXd* local_fields) {
    if (decay_rate < 0.0) throw InvalidParameter("decay rate must be >= 0");
    const std::size_t dim = h.dim();
    std::optional<Eigen::VectorXd> field_diag;
    if (local_fields)
        field_diag = field_diagonal(*h.basis(), *local_fields);

    EvolutionResult result;
    const auto [start, tie] =
        initial_config(h, sched.path, field_diag ? &*field_diag : nullptr);
    result.initial_tie = tie;
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    psi(start) = 1.0;

    const double n_up = h.basis()->n_up();
    const auto deriv = [&](double t, const Eigen::VectorXcd& y,
                           Eigen::VectorXcd& dy) {
        const double s = sched.s_of_t(t);
        h.matvec(y, dy, sched.path.a(s), sched.path.b(s));
        if (field_diag)
            dy.array() +=
                (field_weight(s) * field_diag->array()).cast<Complex>() *
                y.array();
        dy *= Complex{0.0, -1.0};
        if (decay_rate > 0.0) dy -= (decay_rate / 2.0) * n_up * y;
    };

    integrate_rk45(psi, sched.total_time, tol, deriv, result.steps,
                   result.rejected);

    const double expected_norm =
        std::exp(-decay_rate * n_up * sched.total_time / 2.0);
    result.norm_drift = std::abs(psi.norm() - expected_norm);

    // Target: ground space of H(1) with the fields off.
    SolverOptions opts;
    opts.tol = std::min(opts.tol, tol);
    const auto target =
        dense_eigensolve(h.dense_real(sched.path.a(1.0), sched.path.b(1.0)));
    const double e0 = target.values(0);
    const double scale = std::max(1.0, std::abs(e0));
    int degeneracy = 1;
    while (degeneracy < target.values.size() &&
           target.values(degeneracy) - e0 < 1e-8 * scale)
        ++degeneracy;
    result.degenerate_target = degeneracy > 1;

    double overlap = 0.0;
    for (int mu = 0; mu < degeneracy; ++mu)
        overlap += std::norm(
            target.vectors.col(mu).cast<Complex>().dot(psi));
    result.fidelity = overlap;
    result.infidelity = 1.0 - overlap;
    result.final_state = std::move(psi);
    return result;
}

double lossy_fidelity(const CouplingMatrix& cm, int n_up,
                      const Schedule& sched, double gamma, LossMethod method,
                      double tol) {
    if (gamma < 0.0) throw InvalidParameter("decay rate must be >= 0");
    auto basis = std::make_shared<const SectorBasis>(cm.n_spins, n_up);
    const auto h = build_sector_hamiltonian(cm, basis, Anisotropy{1.0, 1.0});

    if (method == LossMethod::Analytic) {
        const auto run = evolve_pure(h, sched, 0.0, tol);
        return std::exp(-gamma * n_up * sched.total_time) * run.fidelity;
    }
    if (method == LossMethod::NoJump)
        return evolve_pure(h, sched, gamma, tol).fidelity;

    // Full master equation on the 2^N density matrix.
    if (cm.n_spins > 6)
        throw DimensionOverflow("full master equation is capped at N = 6");
    const auto parts = fullspace_parts(cm);
    const std::size_t dim = std::size_t{1} << cm.n_spins;
    std::vector<Eigen::MatrixXcd> lowering;
    for (int j = 0; j < cm.n_spins; ++j)
        lowering.push_back(lowering_operator(cm.n_spins, j).cast<Complex>());
    const Eigen::VectorXcd counts =
        excitation_counts(cm.n_spins).cast<Complex>();

    const auto [start, tie] = initial_config(h, sched.path, nullptr);
    (void)tie;
    const std::uint64_t start_bits = basis->state(start);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    rho(start_bits, start_bits) = 1.0;

    const auto deriv = [&](double t, const Eigen::MatrixXcd& r,
                           Eigen::MatrixXcd& dr) {
        const double s = sched.s_of_t(t);
        const Eigen::MatrixXcd ham =
            fullspace_hamiltonian(parts, sched.path.a(s), sched.path.b(s))
                .cast<Complex>();
        dr = Complex{0.0, -1.0} * (ham * r - r * ham);
        if (gamma > 0.0) {
            for (const auto& low : lowering)
                dr += gamma * (low * r * low.adjoint());
            dr -= (gamma / 2.0) * (counts.asDiagonal() * r +
                                   r * counts.asDiagonal());
        }
    };
    long steps = 0, rejected = 0;
    integrate_rk45(rho, sched.total_time, tol, deriv, steps, rejected);

    // Target ground space of the sector Hamiltonian at s = 1, embedded.
    const auto target =
        dense_eigensolve(h.dense_real(sched.path.a(1.0), sched.path.b(1.0)));
    const double e0 = target.values(0);
    int degeneracy = 1;
    while (degeneracy < target.values.size() &&
           target.values(degeneracy) - e0 <
               1e-8 * std::max(1.0, std::abs(e0)))
        ++degeneracy;

    double fidelity = 0.0;
    for (int mu = 0; mu < degeneracy; ++mu) {
        Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(dim);
        for (std::size_t i = 0; i < basis->size(); ++i)
            phi(basis->state(i)) = target.vectors(i, mu);
        fidelity += (phi.adjoint() * rho * phi)(0, 0).real();
    }
    return fidelity;
}

} // namespace wqed
