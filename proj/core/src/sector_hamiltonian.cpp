#include "wqed/sector_hamiltonian.hpp"

#include <cmath>

namespace wqed {

Anisotropy Anisotropy::from_angle(double theta) {
    return {std::cos(theta), std::sin(theta)};
}

bool SectorHamiltonian::is_real() const {
    if (!twist_ || hxy_twist_.empty()) return true;
    return std::abs(std::sin(twist_->phi)) < 1e-15;
}

SectorHamiltonian build_sector_hamiltonian(
    const CouplingMatrix& cm, std::shared_ptr<const SectorBasis> basis,
    Anisotropy anisotropy, std::optional<Twist> twist) {
    if (!basis) throw InvalidParameter("null basis");
    if (cm.n_spins != basis->n_spins())
        throw SizeMismatch("coupling matrix size differs from basis size");
    if (twist) {
        const int n = cm.n_spins;
        if (twist->site_p < 0 || twist->site_p >= n || twist->site_q < 0 ||
            twist->site_q >= n || twist->site_p == twist->site_q)
            throw InvalidParameter("twist sites out of range");
    }

    const int n = cm.n_spins;
    const std::size_t dim = basis->size();

    // Nonzero couplings only, gathered once.
    struct Bond { int i, j; double value; bool twisted; };
    std::vector<Bond> bonds;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (cm.entries(i, j) != 0.0) {
                const bool tw =
                    twist && ((twist->site_p == i && twist->site_q == j) ||
                              (twist->site_p == j && twist->site_q == i));
                bonds.push_back({i, j, cm.entries(i, j), tw});
            }

    SectorHamiltonian h;
    h.basis_ = std::move(basis);
    h.a_ = anisotropy.a;
    h.b_ = anisotropy.b;
    h.twist_ = twist;
    h.hz_ = Eigen::VectorXd::Zero(dim);

    for (std::size_t idx = 0; idx < dim; ++idx) {
        const std::uint64_t config = h.basis_->state(idx);
        double diag = 0.0;
        for (const Bond& bond : bonds) {
            const double si = (config >> bond.i) & 1 ? 0.5 : -0.5;
            const double sj = (config >> bond.j) & 1 ? 0.5 : -0.5;
            diag -= bond.value * si * sj;
            // Exchange entry, recorded once per pair: from the configuration
            // with spin i down, spin j up to its swap.
            if (si < 0.0 && sj > 0.0) {
                const std::uint64_t swapped =
                    config ^ ((std::uint64_t{1} << bond.i) |
                              (std::uint64_t{1} << bond.j));
                const auto other = static_cast<std::int32_t>(h.basis_->index_of(swapped));
                const auto self = static_cast<std::int32_t>(idx);
                SectorHamiltonian::Entry e{other, self, -bond.value / 2.0};
                if (!bond.twisted) {
                    h.hxy_.push_back(e);
                } else {
                    // Orientation: row holds site_p up. In `swapped` site i is
                    // up; flip if the twist names (p, q) = (j, i).
                    if (twist->site_p == bond.j) std::swap(e.row, e.col);
                    h.hxy_twist_.push_back(e);
                }
            }
        }
        h.hz_(idx) = diag;
    }
    return h;
}

void SectorHamiltonian::matvec(const Eigen::VectorXcd& x, Eigen::VectorXcd& y,
                               double a, double b) const {
    if (static_cast<std::size_t>(x.size()) != dim())
        throw SizeMismatch("vector length differs from sector dimension");
    y = (a * hz_.array() * x.array()).matrix();
    for (const Entry& e : hxy_) {
        y(e.row) += b * e.value * x(e.col);
        y(e.col) += b * e.value * x(e.row);
    }
    if (!hxy_twist_.empty()) {
        const Complex phase = std::polar(1.0, -twist_->phi);
        for (const Entry& e : hxy_twist_) {
            y(e.row) += b * e.value * phase * x(e.col);
            y(e.col) += b * e.value * std::conj(phase) * x(e.row);
        }
    }
}

void SectorHamiltonian::matvec(const Eigen::VectorXd& x, Eigen::VectorXd& y,
                               double a, double b) const {
    if (!is_real())
        throw InvalidParameter("real matvec on a complex operator");
    if (static_cast<std::size_t>(x.size()) != dim())
        throw SizeMismatch("vector length differs from sector dimension");
    y = (a * hz_.array() * x.array()).matrix();
    for (const Entry& e : hxy_) {
        y(e.row) += b * e.value * x(e.col);
        y(e.col) += b * e.value * x(e.row);
    }
    const double phase = twist_ ? std::cos(twist_->phi) : 1.0;
    for (const Entry& e : hxy_twist_) {
        y(e.row) += b * e.value * phase * x(e.col);
        y(e.col) += b * e.value * phase * x(e.row);
    }
}

Eigen::VectorXcd SectorHamiltonian::apply(const Eigen::VectorXcd& x) const {
    Eigen::VectorXcd y;
    matvec(x, y);
    return y;
}

Eigen::MatrixXcd SectorHamiltonian::dense(double a, double b) const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim(), dim());
    m.diagonal() = (a * hz_).cast<Complex>();
    for (const Entry& e : hxy_) {
        m(e.row, e.col) += b * e.value;
        m(e.col, e.row) += b * e.value;
    }
    if (!hxy_twist_.empty()) {
        const Complex phase = std::polar(1.0, -twist_->phi);
        for (const Entry& e : hxy_twist_) {
            m(e.row, e.col) += b * e.value * phase;
            m(e.col, e.row) += b * e.value * std::conj(phase);
        }
    }
    return m;
}

Eigen::MatrixXd SectorHamiltonian::dense_real(double a, double b) const {
    if (!is_real())
        throw InvalidParameter("dense_real on a complex operator");
    return dense(a, b).real();
}

double SectorHamiltonian::hs_norm_squared(double a, double b) const {
    double sum = a * a * hz_.squaredNorm();
    for (const Entry& e : hxy_) sum += 2.0 * b * b * e.value * e.value;
    for (const Entry& e : hxy_twist_) sum += 2.0 * b * b * e.value * e.value;
    return sum;
}

} // namespace wqed
