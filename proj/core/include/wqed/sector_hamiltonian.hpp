#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "wqed/basis.hpp"
#include "wqed/couplings.hpp"

namespace wqed {

using Complex = std::complex<double>;

/// Phase twist e^{-i phi} applied to the exchange term of a single spin pair.
struct Twist {
    int site_p = 0;
    int site_q = 1;
    double phi = 0.0;
};

/// Anisotropy weights (a, b) multiplying the ZZ and exchange parts. With
/// (a, b) = (cos theta, sin theta) the assembled operator is the generalized
/// XXZ Hamiltonian at mu = 0, in units of jtilde.
struct Anisotropy {
    double a = 0.0;
    double b = 1.0;
    static Anisotropy from_angle(double theta);
};

/// Magnetization-sector block of the spin Hamiltonian. Immutable after
/// construction; matvec is reentrant. The ZZ part is a diagonal vector, the
/// exchange part a sorted coordinate list; entries on a twisted link are kept
/// separately so the phase can be applied at multiplication time.
class SectorHamiltonian {
public:
    struct Entry {
        std::int32_t row; // for twist entries: config with p up, q down
        std::int32_t col;
        double value;
    };

    SectorHamiltonian() = default;

    std::shared_ptr<const SectorBasis> basis() const { return basis_; }
    std::size_t dim() const { return basis_ ? basis_->size() : 0; }
    double a() const { return a_; }
    double b() const { return b_; }
    double phi() const { return twist_ ? twist_->phi : 0.0; }
    const std::optional<Twist>& twist() const { return twist_; }

    /// True when the operator is real symmetric (no twist, or phi in {0, pi}).
    bool is_real() const;

    const Eigen::VectorXd& hz_diagonal() const { return hz_; }
    const std::vector<Entry>& hxy_entries() const { return hxy_; }
    const std::vector<Entry>& hxy_twist_entries() const { return hxy_twist_; }

    /// y = (a Hz + b Hxy) x with the stored weights.
    void matvec(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const {
        matvec(x, y, a_, b_);
    }
    void matvec(const Eigen::VectorXcd& x, Eigen::VectorXcd& y, double a,
                double b) const;
    /// Real path; requires is_real().
    void matvec(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
        matvec(x, y, a_, b_);
    }
    void matvec(const Eigen::VectorXd& x, Eigen::VectorXd& y, double a,
                double b) const;

    Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;

    Eigen::MatrixXcd dense() const { return dense(a_, b_); }
    Eigen::MatrixXcd dense(double a, double b) const;
    Eigen::MatrixXd dense_real() const { return dense_real(a_, b_); }
    Eigen::MatrixXd dense_real(double a, double b) const;

    /// Squared Hilbert-Schmidt norm of a Hz + b Hxy.
    double hs_norm_squared(double a, double b) const;

    friend SectorHamiltonian build_sector_hamiltonian(
        const CouplingMatrix& cm, std::shared_ptr<const SectorBasis> basis,
        Anisotropy anisotropy, std::optional<Twist> twist);

private:
    std::shared_ptr<const SectorBasis> basis_;
    double a_ = 0.0, b_ = 1.0;
    Eigen::VectorXd hz_;
    std::vector<Entry> hxy_;
    std::vector<Entry> hxy_twist_;
    std::optional<Twist> twist_;
};

SectorHamiltonian build_sector_hamiltonian(
    const CouplingMatrix& cm, std::shared_ptr<const SectorBasis> basis,
    Anisotropy anisotropy, std::optional<Twist> twist = std::nullopt);

inline SectorHamiltonian build_sector_hamiltonian(
    const CouplingMatrix& cm, std::shared_ptr<const SectorBasis> basis,
    double theta, std::optional<Twist> twist = std::nullopt) {
    return build_sector_hamiltonian(cm, std::move(basis),
                                    Anisotropy::from_angle(theta), twist);
}

} // namespace wqed
