#include "wqed/free_fermion.hpp"

#include <cmath>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

namespace wqed {

namespace {

struct FIntegrand {
    double delta;
    int r;
};

double f_integrand(double k, void* params) {
    const auto* p = static_cast<const FIntegrand*>(params);
    const double phi = std::atan2(-(1.0 - p->delta) * std::sin(k),
                                  (1.0 + p->delta) + (1.0 - p->delta) * std::cos(k));
    return std::cos(k * p->r + phi);
}

const bool gsl_handler_disabled = [] {
    gsl_set_error_handler_off();
    return true;
}();

} // namespace

FreeFermionSolution::FreeFermionSolution(double delta_eff, double mu)
    : delta_(delta_eff), mu_(mu) {
    (void)gsl_handler_disabled;
    if (std::abs(delta_) > 1.0)
        throw InvalidParameter("|delta_eff| must not exceed 1");
    if (mu_ < 0.0) throw InvalidParameter("mu must be non-negative");
    const double d2 = delta_ * delta_;
    if (mu_ <= std::abs(delta_)) k0_ = M_PI;
    else if (mu_ >= 1.0) k0_ = 0.0;
    else k0_ = std::acos((2.0 * mu_ * mu_ - 1.0 - d2) / (1.0 - d2));
}

double FreeFermionSolution::dispersion_upper(double k) const {
    const double d2 = delta_ * delta_;
    return 0.5 * std::sqrt(2.0 * (1.0 + d2) + 2.0 * (1.0 - d2) * std::cos(k)) -
           mu_;
}

double FreeFermionSolution::dispersion_lower(double k) const {
    return -(dispersion_upper(k) + mu_) - mu_;
}

double FreeFermionSolution::phase(double k) const {
    return std::atan2(-(1.0 - delta_) * std::sin(k),
                      (1.0 + delta_) + (1.0 - delta_) * std::cos(k));
}

double FreeFermionSolution::g(int r) const {
    if (r == 0) return 1.0 - k0_ / M_PI;
    return -std::sin(k0_ * r) / (M_PI * r);
}

double FreeFermionSolution::f(int r) const {
    if (const auto it = f_cache_.find(r); it != f_cache_.end())
        return it->second;
    if (k0_ == 0.0) {
        f_cache_[r] = 0.0;
        return 0.0;
    }
    FIntegrand params{delta_, r};
    gsl_function fn{&f_integrand, &params};
    gsl_integration_workspace* ws = gsl_integration_workspace_alloc(4096);
    double result = 0.0, abserr = 0.0;
    const int status = gsl_integration_qag(&fn, 0.0, k0_, 1e-12, 0.0, 4096,
                                           GSL_INTEG_GAUSS61, ws, &result,
                                           &abserr);
    gsl_integration_workspace_free(ws);
    if (status != GSL_SUCCESS || abserr > 1e-10)
        throw QuadratureFailure("F_r quadrature did not reach tolerance");
    result = -result / M_PI;
    f_cache_[r] = result;
    return result;
}

double FreeFermionSolution::contraction(int p, int q) const {
    const int i = p >= 0 ? p / 2 : -((-p + 1) / 2);
    const int j = q >= 0 ? q / 2 : -((-q + 1) / 2);
    const bool p_is_b = ((p % 2) + 2) % 2 == 1;
    const bool q_is_b = ((q % 2) + 2) % 2 == 1;
    if (p_is_b == q_is_b) return g(i - j);
    if (!p_is_b) return f(i - j); // <B^a_i A^b_j>
    return f(j - i);              // <B^b_i A^a_j>
}

double FreeFermionSolution::zz(int i, int j) const {
    if (i == j) throw InvalidParameter("zz needs two distinct sites");
    return (contraction(i, i) * contraction(j, j) -
            contraction(i, j) * contraction(j, i)) /
           4.0;
}

double FreeFermionSolution::xx(int i, int j) const {
    if (i == j) throw InvalidParameter("xx needs two distinct sites");
    if (i > j) std::swap(i, j);
    const int dim = j - i;
    Eigen::MatrixXd m(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int s = 0; s < dim; ++s)
            m(r, s) = contraction(i + r, i + 1 + s);
    return m.determinant() / 4.0;
}

double FreeFermionSolution::dimer_order() const {
    const double f0 = f(0), f1 = f(1);
    return (f0 * f0 - f1 * f1 + 2.0 * (f1 - f0)) / 8.0;
}

FreeFermionSolution dimerized_xx_thermo(double delta_eff, double mu) {
    return FreeFermionSolution(delta_eff, mu);
}

FiniteFreeFermion::FiniteFreeFermion(int n_sites, double delta_eff)
    : n_(n_sites), delta_(delta_eff) {
    if (n_ < 2 || n_ > 512)
        throw InvalidParameter("chain length must be in [2, 512]");
    if (n_ % 2 != 0) throw OddSize("chain length must be even");
    Eigen::MatrixXd hop = Eigen::MatrixXd::Zero(n_, n_);
    for (int j = 0; j + 1 < n_; ++j) {
        const double t = 0.5 * (1.0 + (j % 2 == 0 ? delta_ : -delta_));
        hop(j, j + 1) = hop(j + 1, j) = t;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hop);
    levels_ = solver.eigenvalues();
    orbitals_ = solver.eigenvectors();
}

double FiniteFreeFermion::sector_energy(int n_up) const {
    if (n_up < 0 || n_up > n_)
        throw InvalidParameter("particle number out of range");
    return levels_.head(n_up).sum();
}

int FiniteFreeFermion::ground_n_up(double mu) const {
    int best = 0;
    double best_e = sector_energy(0) - mu * (0 - n_ / 2);
    for (int n_up = 1; n_up <= n_; ++n_up) {
        const double e = sector_energy(n_up) - mu * (n_up - n_ / 2);
        if (e < best_e - 1e-12) {
            best_e = e;
            best = n_up;
        }
    }
    return best;
}

Eigen::MatrixXd FiniteFreeFermion::correlation_matrix(int n_up) const {
    if (n_up < 0 || n_up > n_)
        throw InvalidParameter("particle number out of range");
    const auto occ = orbitals_.leftCols(n_up);
    return occ * occ.transpose();
}

double FiniteFreeFermion::zz(const Eigen::MatrixXd& corr, int i, int j) const {
    if (i == j) throw InvalidParameter("zz needs two distinct sites");
    return (corr(i, i) - 0.5) * (corr(j, j) - 0.5) - corr(i, j) * corr(i, j);
}

double FiniteFreeFermion::xx(const Eigen::MatrixXd& corr, int i, int j) const {
    if (i == j) throw InvalidParameter("xx needs two distinct sites");
    if (i > j) std::swap(i, j);
    const int dim = j - i;
    Eigen::MatrixXd m(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int s = 0; s < dim; ++s) {
            const int p = i + r, q = i + 1 + s;
            m(r, s) = 2.0 * corr(p, q) - (p == q ? 1.0 : 0.0);
        }
    return m.determinant() / 4.0;
}

FiniteFreeFermion dimerized_xx_finite(int n_sites, double delta_eff,
                                      Boundary boundary) {
    if (boundary != Boundary::OBC)
        throw BoundaryUnsupported(
            "free-fermion solver supports open chains only");
    return FiniteFreeFermion(n_sites, delta_eff);
}

} // namespace wqed
